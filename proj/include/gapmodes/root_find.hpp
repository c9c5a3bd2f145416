#pragma once

// Bracketed scalar root finding: regula falsi with the Illinois modification,
// falling back to bisection whenever the secant step leaves the bracket.

#include <cmath>
#include <utility>

#include "gapmodes/types.hpp"

namespace gapmodes {

template <class F>
double find_root(F&& f, double a, double b, double fa, double fb, double xtol,
                 int max_iter = 200) {
    if (!(xtol > 0.0)) throw PreconditionError("find_root: xtol must be positive");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw PreconditionError("find_root: endpoints do not bracket a root");

    int side = 0;
    for (int it = 0; it < max_iter && std::abs(b - a) > xtol; ++it) {
        double c = (a * fb - b * fa) / (fb - fa);
        const double lo = std::min(a, b), hi = std::max(a, b);
        if (!std::isfinite(c) || c <= lo || c >= hi) c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = c;
            fb = fc;
            if (side == +1) fa *= 0.5;
            side = +1;
        }
    }
    return 0.5 * (a + b);
}

template <class F>
double find_root(F&& f, double a, double b, double xtol, int max_iter = 200) {
    const double fa = f(a);
    const double fb = f(b);
    return find_root(std::forward<F>(f), a, b, fa, fb, xtol, max_iter);
}

}  // namespace gapmodes
