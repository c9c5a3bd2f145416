#pragma once

// Gap modes under finite-width kicks, solved by shooting: integrate inward
// from +-T with decaying Floquet end states of the unperturbed equation and
// drive the Wronskian mismatch at t = 0 to zero in delta.

#include <vector>

#include "gapmodes/delta_kick.hpp"
#include "gapmodes/types.hpp"

namespace gapmodes {

struct ShootingProblem {
    MathieuParams params;  // delta is the unknown; NaN until solved
    KickSpec kick;         // non-Dirac
    double match_time;     // T = 2*pi*N
    double tol;            // root tolerance on delta

    int periods() const;
};

// Picks the smallest T = 2*pi*N at which the kick has fallen below 1e-12 of
// its peak, capped at N = 64 (slow Lorentzian tails); the cap is backed by
// boundary_validity_defect as the safety check.
ShootingProblem make_shooting(double epsilon, const KickSpec& kick,
                              double tol = 1e-10);

// Normalized Wronskian sin(angle between the two inward-shot states) at t = 0.
// Zero exactly at a bound-mode eigenvalue.
double mismatch(const ShootingProblem& problem, double delta);

// delta root of the mismatch inside tongue n plus the assembled profile.
// samples <= 0 picks a grid resolving the fast oscillation.
GapMode solve_bvp(const ShootingProblem& problem, int n, int samples = -1);

struct WidthPoint {
    double width;
    double delta;
};

// Gaussian-kick eigenvalues delta(w); widths must be positive, descending.
std::vector<WidthPoint> width_sweep(double epsilon, double lambda, int n,
                                    const std::vector<double>& widths,
                                    double tol = 1e-10);

// How far the Floquet end state at +-T is from scaling by mu over one more
// outward period of the full kicked equation, relative to the state norm.
double boundary_validity_defect(const ShootingProblem& problem, double delta);

}  // namespace gapmodes
