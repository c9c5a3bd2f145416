#include "gapmodes/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dopri5.hpp"
#include "gapmodes/root_find.hpp"

namespace gapmodes {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Half-period matrix A = M_{0 -> pi}. By evenness of the potential the period
// map factors as M = P A^{-1} P A with P = diag(1,-1), which gives
//   trace M - 2 = 4 s(pi) c'(pi),   trace M + 2 = 4 c(pi) s'(pi),
// so tongue edges are simple zeros of individual entries of A even when the
// tongue is far too narrow for |trace| - 2 to be resolved directly.
Mat2 half_period_matrix(const MathieuParams& params, double tol) {
    return fundamental_matrix(params, NoKick{}, 0.0, kPi, tol);
}

struct HalfSplit {
    double m;   // (trace of M) / 2 = ad + bc
    double s2;  // m^2 - 1 = 4abcd, positive strictly inside a tongue
};

HalfSplit split_from(const Mat2& a) {
    const double m = a.m00 * a.m11 + a.m01 * a.m10;
    const double s2 = 4.0 * a.m00 * a.m01 * a.m10 * a.m11;
    return {m, s2};
}

// Decaying/growing eigenvectors of M from A without forming M. M has equal
// diagonal entries (ad + bc) and off-diagonals 2bd, 2ac, so the eigenvectors
// are built from quantities that stay well-scaled in narrow tongues.
GapEigen eigen_from_half(const Mat2& a) {
    const auto [m, s2] = split_from(a);
    if (s2 <= 0.0)
        throw NotInGapError("gap_eigen: parameters are not strictly inside a tongue");
    const double s = std::sqrt(s2);
    const double splitting = 2.0 * s;
    if (splitting < 1e-6)
        throw NearDegenerateError(
            "gap_eigen: Floquet multipliers within 1e-6 of coalescence");

    const double sgn = (m > 0.0) ? 1.0 : -1.0;
    const double mu = sgn / (std::abs(m) + s);  // decaying, |mu| < 1

    const double p = 2.0 * a.m01 * a.m11;  // M off-diagonal (0,1)
    const double q = 2.0 * a.m00 * a.m10;  // M off-diagonal (1,0)

    // (M - mu I) v = 0 with M - mu I = [[sgn*s, p], [q, sgn*s]].
    double xd, vd, xg, vg;
    if (std::abs(p) >= std::abs(q)) {
        xd = p;
        vd = -sgn * s;
        xg = p;
        vg = sgn * s;
    } else {
        xd = -sgn * s;
        vd = q;
        xg = sgn * s;
        vg = q;
    }
    auto normalize = [](double& x, double& v) {
        const double n = std::hypot(x, v);
        x /= n;
        v /= n;
        if (x < 0.0 || (x == 0.0 && v < 0.0)) {
            x = -x;
            v = -v;
        }
    };
    normalize(xd, vd);
    normalize(xg, vg);
    return GapEigen{mu, splitting, xd, vd, xg, vg};
}

// Zeros per period of the decaying branch: constant across a tongue and equal
// to the tongue number n at the eps -> 0 opening point n^2/4. Counting them
// realizes the gap-index continuation without re-tracing in epsilon.
int count_zeros_per_period(const MathieuParams& params, const GapEigen& ge,
                           double tol) {
    const double fast = std::sqrt(1.0 + std::abs(params.delta) + params.epsilon);
    detail::StepLimits lim;
    lim.max_step = std::min(0.25, 0.25 * kPi / fast);

    int crossings = 0;
    int sign = 0;
    auto observe = [&](double, const detail::Vec<2>& y) {
        const int s = (y[0] > 0.0) ? 1 : (y[0] < 0.0 ? -1 : 0);
        if (s != 0) {
            if (sign != 0 && s != sign) ++crossings;
            sign = s;
        }
    };
    auto pot = [&params](double t) {
        return params.delta + params.epsilon * std::cos(t);
    };
    auto rhs = [&pot](double t, const detail::Vec<2>& y, detail::Vec<2>& dy) {
        dy[0] = y[1];
        dy[1] = -pot(t) * y[0];
    };
    sign = (ge.xd > 0.0) ? 1 : (ge.xd < 0.0 ? -1 : 0);
    detail::dopri5<2>(rhs, 0.0, kTwoPi, {ge.xd, ge.vd}, tol, lim, observe);
    if (std::abs(ge.xd) < 1e-12) ++crossings;  // zero sitting exactly at t = 0
    return crossings;
}

}  // namespace

Monodromy monodromy(const MathieuParams& params, double tol) {
    const Mat2 m = fundamental_matrix(params, NoKick{}, 0.0, kTwoPi, tol);
    if (std::abs(m.det() - 1.0) > 1e-8)
        throw Error("monodromy: determinant drifted beyond 1e-8");
    return Monodromy{m, m.trace()};
}

StabilityClass classify(const MathieuParams& params, double edge_tol, double tol) {
    if (!(edge_tol > 0.0))
        throw PreconditionError("classify: edge_tol must be positive");
    const Monodromy m = monodromy(params, tol);
    const double excess = std::abs(m.trace) - 2.0;
    if (std::abs(excess) <= edge_tol)
        return StabilityClass{StabilityClass::Kind::Edge, -1};
    if (excess < 0.0) return StabilityClass{StabilityClass::Kind::Stable, -1};

    const GapEigen ge = eigen_from_half(half_period_matrix(params, tol));
    const int n = count_zeros_per_period(params, ge, tol);
    const bool trace_negative = m.trace < 0.0;
    if (trace_negative != (n % 2 == 1))
        throw Error("classify: zero count disagrees with trace parity");
    return StabilityClass{StabilityClass::Kind::Unstable, n};
}

GapEdges gap_edges(double epsilon, int n, double tol) {
    if (!(epsilon > 0.0))
        throw PreconditionError("gap_edges: epsilon must be positive");
    if (n < 1) throw PreconditionError("gap_edges: tongue index must be >= 1");
    if (!(tol > 0.0)) throw PreconditionError("gap_edges: tol must be positive");

    const double seed = 0.25 * n * n;
    const double lo = seed - 1.0, hi = seed + 1.0;
    const int n_scan = 400;
    const double integ_tol = std::clamp(0.01 * tol, 1e-13, 1e-11);

    // Edge conditions: odd tongue ends where c(pi) = 0 or s'(pi) = 0
    // (trace = -2); even tongue where s(pi) = 0 or c'(pi) = 0 (trace = +2).
    const bool odd = (n % 2 == 1);
    auto entries = [&](double delta) {
        const Mat2 a = half_period_matrix({delta, epsilon}, integ_tol);
        return odd ? std::pair{a.m00, a.m11} : std::pair{a.m01, a.m10};
    };

    std::vector<double> grid(n_scan + 1), f1(n_scan + 1), f2(n_scan + 1);
    for (int i = 0; i <= n_scan; ++i) {
        grid[i] = lo + (hi - lo) * i / n_scan;
        std::tie(f1[i], f2[i]) = entries(grid[i]);
    }

    auto root_near_seed = [&](const std::vector<double>& f, int which) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_scan; ++i) {
            if (f[i] == 0.0 || (f[i] > 0.0) != (f[i + 1] > 0.0)) {
                const double mid = 0.5 * (grid[i] + grid[i + 1]);
                const double dist = std::abs(mid - seed);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = i;
                }
            }
        }
        if (best < 0)
            throw EdgeNotFoundError(
                "gap_edges: no sign change for edge function near tongue " +
                    std::to_string(n) + " at epsilon " + std::to_string(epsilon),
                lo, hi);
        auto fn = [&](double d) {
            const auto [g1, g2] = entries(d);
            return which == 0 ? g1 : g2;
        };
        return find_root(fn, grid[best], grid[best + 1], f[best], f[best + 1], tol);
    };

    const double r1 = root_near_seed(f1, 0);
    const double r2 = root_near_seed(f2, 1);
    return GapEdges{std::min(r1, r2), std::max(r1, r2)};
}

GapEigen gap_eigen(const MathieuParams& params, double tol) {
    return eigen_from_half(half_period_matrix(params, tol));
}

FloquetMode decaying_mode(const MathieuParams& params, Direction direction,
                          double tol) {
    const GapEigen ge = gap_eigen(params, tol);
    FloquetMode mode;
    mode.multiplier = ge.mu;
    mode.exponent = std::log(std::abs(ge.mu)) / kTwoPi;
    mode.x0 = ge.xd;
    mode.v0 = (direction == Direction::Plus) ? ge.vd : -ge.vd;
    mode.direction = direction;
    return mode;
}

std::vector<ChartEntry> stability_chart(double delta_min, double delta_max,
                                        double eps_min, double eps_max,
                                        int n_delta, int n_eps, double edge_tol,
                                        double tol) {
    if (n_delta < 1 || n_eps < 1)
        throw PreconditionError("stability_chart: grid dimensions must be positive");
    std::vector<ChartEntry> out;
    out.reserve(static_cast<std::size_t>(n_delta) * n_eps);
    for (int j = 0; j < n_eps; ++j) {
        const double eps =
            (n_eps == 1) ? eps_min
                         : eps_min + (eps_max - eps_min) * j / (n_eps - 1);
        for (int i = 0; i < n_delta; ++i) {
            const double delta =
                (n_delta == 1) ? delta_min
                               : delta_min + (delta_max - delta_min) * i / (n_delta - 1);
            out.push_back({delta, eps, classify({delta, eps}, edge_tol, tol)});
        }
    }
    return out;
}

}  // namespace gapmodes
