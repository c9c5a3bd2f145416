#pragma once

// Gap modes of the kicked equation x'' + (delta + eps*cos t - lambda*delta(t)) x = 0:
// the matching condition on lambda, its inversion for delta, profile assembly
// from the decaying Floquet branches, and the spectral-flow sweep delta(lambda).

#include <optional>
#include <vector>

#include "gapmodes/floquet.hpp"
#include "gapmodes/types.hpp"

namespace gapmodes {

// A converged bound mode living inside tongue gap_index.
struct GapMode {
    MathieuParams params;
    KickSpec kick;
    int gap_index = 0;
    double lambda = 0.0;      // integrated kick strength
    std::vector<double> t;    // sample times on [-T, T]
    std::vector<double> x;    // profile, normalized to max|x| = 1
    double measured_decay = 0.0;  // fitted envelope rate; NaN if the window is too short
    std::optional<double> delta1;  // (delta - 1/4)/epsilon, recorded for tongue 1 only
};

// Kick strength required for a bound mode at (delta, epsilon):
// lambda = m+'(0)/m+(0) - m-'(0)/m-(0). Evaluated from the Floquet
// eigenvectors and cross-checked against the parity-reduced form 2 v0/x0.
double lambda_required(const MathieuParams& params, double tol = kDefaultTol);

// The unique delta inside tongue n with lambda_required(delta, eps) = lambda.
double solve_delta(double lambda, double epsilon, int n, double tol = 1e-10);

GapMode build_profile(double delta, double epsilon, double lambda,
                      double half_window, int samples, double tol = kDefaultTol);

struct FlowPoint {
    double lambda;
    double delta;
};

// delta(lambda) across tongue n; lambdas must be positive and ascending.
std::vector<FlowPoint> spectral_flow(double epsilon, int n,
                                     const std::vector<double>& lambdas,
                                     double tol = 1e-10);

// Wronskian m+(0) m-'(0) - m-(0) m+'(0) of the two decaying branches;
// nonzero inside a gap, and equal to -lambda_required * m+(0) * m-(0).
double wronskian_check(const MathieuParams& params, double tol = kDefaultTol);

}  // namespace gapmodes
