#pragma once

// Outward sampling of a decaying Floquet branch of the unperturbed equation.
// The state is reset to the unit eigenvector at every period boundary and the
// removed amplitude mu^k is restored on output, so the growing partner
// solution can never take over and long windows cannot underflow.

#include <cmath>
#include <vector>

#include "gapmodes/ode.hpp"

namespace gapmodes::detail {

inline constexpr double kWalkTwoPi = 6.28318530717958647692;

// distances: |t| offsets from the branch base, ascending. side +1 walks the
// branch forward in time, -1 backward. Appends x values to out.
inline void walk_decaying_branch(const MathieuParams& params, double x0, double v0,
                                 int side, const std::vector<double>& distances,
                                 double mu, std::vector<double>& out, double tol) {
    State s{x0, v0, 0.0};
    long cur_period = 0;
    const double abs_mu = std::abs(mu);
    for (double dist : distances) {
        long k = static_cast<long>(std::floor(dist / kWalkTwoPi));
        double tau = dist - kWalkTwoPi * k;
        if (tau >= kWalkTwoPi) {
            tau -= kWalkTwoPi;
            ++k;
        }
        if (k != cur_period) {
            s = State{x0, v0, 0.0};
            cur_period = k;
        }
        s = propagate(params, NoKick{}, s, side * tau, tol);
        double factor = std::pow(abs_mu, static_cast<double>(k));
        if (mu < 0.0 && k % 2 != 0) factor = -factor;
        out.push_back(factor * s.x);
    }
}

}  // namespace gapmodes::detail
