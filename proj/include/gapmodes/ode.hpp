#pragma once

// Propagation of the state (x, x') under x'' + (delta + eps*cos t + F(t)) x = 0
// with an embedded Dormand-Prince 5(4) pair, local error per unit step <= tol.

#include "gapmodes/types.hpp"

namespace gapmodes {

inline constexpr double kDefaultTol = 1e-10;

struct Mat2 {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;

    double trace() const { return m00 + m11; }
    double det() const { return m00 * m11 - m01 * m10; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }
};

// delta + epsilon*cos(t) + F(t). The Dirac variant is rejected: its effect is
// the analytic derivative jump, never a quadrature term.
double potential_value(const MathieuParams& params, const KickSpec& kick, double t);

// Adaptive integration from state.t to t_end (either direction). Finite-width
// kicks are resolved by capping the step at width/4 inside |t| <= 8*width.
State propagate(const MathieuParams& params, const KickSpec& kick, State state,
                double t_end, double tol = kDefaultTol);

// Columns are the propagated images of (x,v) = (1,0) and (0,1).
// det = 1 up to integration error (the flow is Hamiltonian).
Mat2 fundamental_matrix(const MathieuParams& params, const KickSpec& kick,
                        double t0, double t1, double tol = kDefaultTol);

}  // namespace gapmodes
