#include "gapmodes/delta_kick.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "floquet_walk.hpp"
#include "gapmodes/asymptotics.hpp"
#include "gapmodes/root_find.hpp"

namespace gapmodes {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double lambda_from_eigen(const GapEigen& ge) {
    if (std::abs(ge.xd) <= 1e-12)
        throw PoleError(
            "lambda_required: m+(0) vanishes; the required strength diverges "
            "(odd-parity limit)");
    // General form of the matching condition from the two branches, with the
    // growing eigenvector standing in for m- at t = 0.
    const double general = ge.vd / ge.xd - ge.vg / ge.xg;
    const double parity = 2.0 * ge.vd / ge.xd;
    if (std::abs(general - parity) > 1e-8 * std::max(1.0, std::abs(parity)))
        throw Error("lambda_required: general and parity-reduced forms disagree");
    return general;
}

std::string format_scan(const std::vector<std::pair<double, double>>& rows,
                        const char* fname) {
    std::string table = "  delta            ";
    table += fname;
    table += "\n";
    char buf[96];
    for (const auto& [d, g] : rows) {
        std::snprintf(buf, sizeof buf, "  %.12g  %.12g\n", d, g);
        table += buf;
    }
    return table;
}

double solve_delta_in(double lambda, double epsilon, int n, double tol,
                      const GapEdges& edges) {
    if (!(lambda > 0.0))
        throw NoGapModeError(
            "solve_delta: no bound mode exists for lambda <= 0 (the matching "
            "determinant vanishes at lambda = 0)");
    if (!(epsilon > 0.0))
        throw PreconditionError("solve_delta: epsilon must be positive");
    if (!(tol > 0.0)) throw PreconditionError("solve_delta: tol must be positive");

    const double width = edges.width();
    auto g = [&](double delta) {
        return lambda_required({delta, epsilon}) - lambda;
    };

    // lambda_required runs from 0 at one edge to a pole at the other, so a
    // bracket always exists once the insets are pushed close enough in.
    double inset_a = std::min(1e-5, 0.05 * width);
    double inset_b = inset_a;
    double a = edges.lower + inset_a, b = edges.upper - inset_b;
    double ga = g(a), gb = g(b);
    for (int k = 0; k < 60 && (ga > 0.0) == (gb > 0.0); ++k) {
        const bool increasing = gb > ga;
        const bool move_a = (ga > 0.0) == increasing;
        try {
            if (move_a) {
                inset_a *= 0.5;
                a = edges.lower + inset_a;
                ga = g(a);
            } else {
                inset_b *= 0.5;
                b = edges.upper - inset_b;
                gb = g(b);
            }
        } catch (const NearDegenerateError&) {
            break;  // that edge is numerically out of reach
        } catch (const PoleError&) {
            break;
        }
    }
    if ((ga > 0.0) == (gb > 0.0)) {
        std::vector<std::pair<double, double>> rows;
        for (int i = 0; i <= 24; ++i) {
            const double d = a + (b - a) * i / 24.0;
            double val = std::numeric_limits<double>::quiet_NaN();
            try {
                val = g(d);
            } catch (const Error&) {
            }
            rows.emplace_back(d, val);
        }
        throw RootNotFoundError(
            "solve_delta: no sign change of lambda_required - lambda inside "
            "tongue " + std::to_string(n),
            format_scan(rows, "lambda_required - lambda"));
    }
    return find_root(g, a, b, ga, gb, tol);
}

}  // namespace

double lambda_required(const MathieuParams& params, double tol) {
    return lambda_from_eigen(gap_eigen(params, tol));
}

double solve_delta(double lambda, double epsilon, int n, double tol) {
    const GapEdges edges = gap_edges(epsilon, n, std::min(tol, 1e-10));
    return solve_delta_in(lambda, epsilon, n, tol, edges);
}

GapMode build_profile(double delta, double epsilon, double lambda,
                      double half_window, int samples, double tol) {
    if (!(half_window > 0.0))
        throw PreconditionError("build_profile: half_window must be positive");
    if (samples < 3)
        throw PreconditionError("build_profile: need at least 3 samples");

    const MathieuParams params{delta, epsilon};
    const GapEigen ge = gap_eigen(params, tol);
    const double lam_req = lambda_from_eigen(ge);
    if (std::abs(lambda - lam_req) > 1e-6)
        throw InconsistentModeError(
            "build_profile: lambda differs from lambda_required(delta, epsilon) "
            "by more than 1e-6");

    GapMode mode;
    mode.params = params;
    mode.kick = DiracKick{lambda};
    mode.lambda = lambda;
    const StabilityClass cls = classify(params, kEdgeTol, tol);
    mode.gap_index = cls.unstable() ? cls.gap_index : 0;

    mode.t.resize(samples);
    mode.x.assign(samples, 0.0);
    for (int k = 0; k < samples; ++k)
        mode.t[k] = -half_window + 2.0 * half_window * k / (samples - 1);

    // x = m+ on t >= 0 and its parity image on t < 0; both branches are
    // propagated independently so evenness is a measured property, not an
    // artifact of mirroring.
    std::vector<double> plus_dist, minus_dist, vals;
    std::vector<int> plus_idx, minus_idx;
    for (int k = 0; k < samples; ++k) {
        if (mode.t[k] >= 0.0) {
            plus_dist.push_back(mode.t[k]);
            plus_idx.push_back(k);
        } else {
            minus_dist.push_back(-mode.t[k]);
            minus_idx.push_back(k);
        }
    }
    std::reverse(minus_dist.begin(), minus_dist.end());
    std::reverse(minus_idx.begin(), minus_idx.end());

    detail::walk_decaying_branch(params, ge.xd, ge.vd, +1, plus_dist, ge.mu, vals, tol);
    for (std::size_t i = 0; i < plus_idx.size(); ++i) mode.x[plus_idx[i]] = vals[i];
    vals.clear();
    detail::walk_decaying_branch(params, ge.xd, -ge.vd, -1, minus_dist, ge.mu, vals,
                                 tol);
    for (std::size_t i = 0; i < minus_idx.size(); ++i) mode.x[minus_idx[i]] = vals[i];

    double peak = 0.0;
    for (double x : mode.x) peak = std::max(peak, std::abs(x));
    if (peak > 0.0)
        for (double& x : mode.x) x /= peak;

    try {
        mode.measured_decay = fit_envelope(mode.t, mode.x).rate;
    } catch (const EnvelopeFitError&) {
        mode.measured_decay = std::numeric_limits<double>::quiet_NaN();
    }
    if (mode.gap_index == 1) mode.delta1 = (delta - 0.25) / epsilon;
    return mode;
}

std::vector<FlowPoint> spectral_flow(double epsilon, int n,
                                     const std::vector<double>& lambdas,
                                     double tol) {
    if (lambdas.empty())
        throw PreconditionError("spectral_flow: lambda grid is empty");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0))
            throw PreconditionError("spectral_flow: all lambdas must be positive");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
            throw PreconditionError("spectral_flow: lambdas must be ascending");
    }
    const GapEdges edges = gap_edges(epsilon, n, std::min(tol, 1e-10));
    std::vector<FlowPoint> out;
    out.reserve(lambdas.size());
    for (double lam : lambdas)
        out.push_back({lam, solve_delta_in(lam, epsilon, n, tol, edges)});
    return out;
}

double wronskian_check(const MathieuParams& params, double tol) {
    const GapEigen ge = gap_eigen(params, tol);
    const double xm = ge.xd, vm = -ge.vd;  // m- at t = 0 by parity
    return ge.xd * vm - xm * ge.vd;
}

}  // namespace gapmodes
