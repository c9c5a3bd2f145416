#pragma once

// Dormand-Prince 5(4) embedded pair, FSAL, error-per-unit-step control.
// Internal to the library; templated on the state dimension so the scalar
// equation and the fundamental-matrix system share one stepper.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "gapmodes/types.hpp"

namespace gapmodes::detail {

template <std::size_t N>
using Vec = std::array<double, N>;

struct StepLimits {
    double kick_width = 0.0;  // cap steps at width/4 inside |t| <= 8*width
    double max_step = std::numeric_limits<double>::infinity();
};

// Largest |h| allowed from t in direction dir so a narrow kick is never
// stepped over. Approaching steps may overshoot a quarter width into the
// window; landing exactly on the boundary could strand the step size at a
// few ulps.
inline double kick_step_cap(double t, double dir, double width) {
    if (width <= 0.0) return std::numeric_limits<double>::infinity();
    const double window = 8.0 * width;
    if (std::abs(t) <= window) return 0.25 * width;
    const bool approaching = (t < -window && dir > 0.0) || (t > window && dir < 0.0);
    if (!approaching) return std::numeric_limits<double>::infinity();
    return std::abs(t) - window + 0.25 * width;
}

struct NullObserver {
    template <std::size_t N>
    void operator()(double, const Vec<N>&) const {}
};

template <std::size_t N, class Rhs, class Observer = NullObserver>
Vec<N> dopri5(Rhs&& rhs, double t0, double t1, Vec<N> y, double tol,
              const StepLimits& lim = {}, Observer&& observe = {}) {
    if (!(tol > 0.0)) throw PreconditionError("integrate: tol must be positive");
    if (t1 == t0) return y;

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    // b - b*: difference between the 5th- and 4th-order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = (t1 > t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min({0.1, std::abs(t1 - t0), lim.max_step,
                               kick_step_cap(t0, dir, lim.kick_width)});

    Vec<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    rhs(t, y, k1);
    bool fsal_valid = true;

    const long max_steps = 100'000'000L;
    for (long step = 0; step < max_steps; ++step) {
        if ((t - t1) * dir >= 0.0) return y;

        const double remaining = std::abs(t1 - t);
        const double time_ulp = std::numeric_limits<double>::epsilon() *
                                std::max({1.0, std::abs(t), std::abs(t1)});
        if (remaining <= 64.0 * time_ulp) return y;  // within time resolution

        double cap = std::min({remaining, lim.max_step,
                               kick_step_cap(t, dir, lim.kick_width)});
        if (std::abs(h) > cap) h = dir * cap;
        if (std::abs(h) < 32.0 * time_ulp) {
            throw IntegrationError("integrate: step size underflow",
                                   State{y[0], y[1], t});
        }

        if (!fsal_valid) rhs(t, y, k1);

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + h / 5.0, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + 3.0 * h / 10.0, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + 4.0 * h / 5.0, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + 8.0 * h / 9.0, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                                  a75 * k5[i] + a76 * k6[i]);
        rhs(t + h, ynew, k7);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = 1.0 + std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(ei) / scale);
            finite = finite && std::isfinite(ynew[i]);
        }

        const double budget = tol * std::abs(h);
        if (finite && err <= budget) {
            t += h;
            y = ynew;
            k1 = k7;
            fsal_valid = true;
            observe(t, y);
            const double grow = (err > 0.0)
                                    ? std::min(5.0, 0.9 * std::pow(budget / err, 0.25))
                                    : 5.0;
            h *= grow;
        } else {
            const double shrink =
                finite && err > 0.0
                    ? std::max(0.2, 0.9 * std::pow(budget / err, 0.25))
                    : 0.2;
            h *= shrink;
            fsal_valid = false;
        }
    }
    throw IntegrationError("integrate: step budget exhausted",
                           State{y[0], y[1], t});
}

}  // namespace gapmodes::detail
