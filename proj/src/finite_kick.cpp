#include "gapmodes/finite_kick.hpp"

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
constexpr int kMaxPeriods = 64;

// |F(t)| / |F(0)| for the supported finite kicks.
double tail_ratio(const KickSpec& kick, double t) {
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianKick>) {
                return std::exp(-0.5 * t * t / (k.width * k.width));
            } else if constexpr (std::is_same_v<K, LorentzianKick>) {
                const double w2 = k.width * k.width;
                return w2 / (w2 + t * t);
            } else if constexpr (std::is_same_v<K, TaeShearKick>) {
                const double q = 1.0 + k.shear * k.shear * t * t;
                return 1.0 / (q * q);
            } else {
                return 0.0;
            }
        },
        kick);
}

struct BranchEnd {
    double x, v;       // renormalized state at t = 0
    double log_scale;  // ln of the removed amplitude
};

// Integrate one branch inward from +-T, starting at the decaying Floquet
// state of the unperturbed equation, with the full kicked potential. Records
// the running solution at the requested times (ordered from the far end
// toward zero) as pairs (x, log_scale).
BranchEnd shoot_branch(const ShootingProblem& problem, double delta, int side,
                       const GapEigen& ge, const std::vector<double>& times,
                       std::vector<std::pair<double, double>>* record) {
    const MathieuParams params{delta, problem.params.epsilon};
    const double T = problem.match_time;
    State s{ge.xd, side > 0 ? ge.vd : -ge.vd, side > 0 ? T : -T};
    double log_scale = 0.0;
    const double integ_tol = std::min(1e-10, problem.tol);

    auto renorm = [&] {
        const double norm = std::hypot(s.x, s.v);
        if (norm > 1e3 || (norm < 1e-3 && norm > 0.0)) {
            log_scale += std::log(norm);
            s.x /= norm;
            s.v /= norm;
        }
    };

    if (record) {
        for (double target : times) {
            s = propagate(params, problem.kick, s, target, integ_tol);
            record->emplace_back(s.x, log_scale);
            renorm();
        }
        if (s.t != 0.0) {
            s = propagate(params, problem.kick, s, 0.0, integ_tol);
            renorm();
        }
    } else {
        const int n_seg = std::max(1, problem.periods());
        for (int i = n_seg - 1; i >= 0; --i) {
            s = propagate(params, problem.kick, s, side > 0 ? kTwoPi * i : -kTwoPi * i,
                          integ_tol);
            renorm();
        }
    }
    return BranchEnd{s.x, s.v, log_scale};
}

double mismatch_impl(const ShootingProblem& problem, double delta) {
    const GapEigen ge = gap_eigen({delta, problem.params.epsilon},
                                  std::min(1e-10, problem.tol));
    const BranchEnd p = shoot_branch(problem, delta, +1, ge, {}, nullptr);
    const BranchEnd m = shoot_branch(problem, delta, -1, ge, {}, nullptr);
    const double w = p.x * m.v - m.x * p.v;
    return w / (std::hypot(p.x, p.v) * std::hypot(m.x, m.v));
}

std::string format_scan(const std::vector<std::pair<double, double>>& rows) {
    std::string table = "  delta            mismatch\n";
    char buf[96];
    for (const auto& [d, g] : rows) {
        std::snprintf(buf, sizeof buf, "  %.12g  %.12g\n", d, g);
        table += buf;
    }
    return table;
}

double find_bvp_delta(const ShootingProblem& problem, int n, const GapEdges& edges) {
    const double width = edges.width();
    const double inset = 1e-3 * width;
    const int n_scan = 160;

    std::vector<double> grid(n_scan + 1), val(n_scan + 1);
    std::vector<std::pair<double, double>> scan_rows;
    for (int i = 0; i <= n_scan; ++i) {
        grid[i] = edges.lower + inset + (width - 2.0 * inset) * i / n_scan;
        try {
            val[i] = mismatch_impl(problem, grid[i]);
        } catch (const Error&) {
            val[i] = std::numeric_limits<double>::quiet_NaN();
        }
        scan_rows.emplace_back(grid[i], val[i]);
    }

    std::vector<int> brackets;
    for (int i = 0; i < n_scan; ++i) {
        if (std::isnan(val[i]) || std::isnan(val[i + 1])) continue;
        if (val[i] == 0.0 || (val[i] > 0.0) != (val[i + 1] > 0.0)) brackets.push_back(i);
    }
    if (brackets.empty())
        throw NoModeFoundError(
            "solve_bvp: mismatch has no sign change inside tongue " +
                std::to_string(n) + " (no bound mode for this kick)",
            format_scan(scan_rows));

    int pick = brackets.front();
    if (brackets.size() > 1) {
        // Several candidates: keep the one continuing the point-kick mode.
        try {
            const double d_dirac =
                solve_delta(integrated_strength(problem.kick),
                            problem.params.epsilon, n, problem.tol);
            double best = std::numeric_limits<double>::infinity();
            for (int b : brackets) {
                const double mid = 0.5 * (grid[b] + grid[b + 1]);
                if (std::abs(mid - d_dirac) < best) {
                    best = std::abs(mid - d_dirac);
                    pick = b;
                }
            }
        } catch (const Error&) {
        }
    }

    auto f = [&](double d) { return mismatch_impl(problem, d); };
    return find_root(f, grid[pick], grid[pick + 1], val[pick], val[pick + 1],
                     problem.tol);
}

}  // namespace

int ShootingProblem::periods() const {
    return static_cast<int>(std::lround(match_time / kTwoPi));
}

ShootingProblem make_shooting(double epsilon, const KickSpec& kick, double tol) {
    if (is_dirac(kick))
        throw PreconditionError("make_shooting: Dirac kicks are handled analytically");
    if (!(epsilon > 0.0))
        throw PreconditionError("make_shooting: epsilon must be positive");
    if (!(tol > 0.0)) throw PreconditionError("make_shooting: tol must be positive");
    kick_width_scale(kick);  // validates width/shear positivity via visit below
    if (!is_none(kick)) (void)kick_value(kick, 0.0);

    int n_periods = kMaxPeriods;
    for (int n = 1; n <= kMaxPeriods; ++n) {
        if (tail_ratio(kick, kTwoPi * n) <= 1e-12) {
            n_periods = n;
            break;
        }
    }
    ShootingProblem p;
    p.params = MathieuParams{std::numeric_limits<double>::quiet_NaN(), epsilon};
    p.kick = kick;
    p.match_time = kTwoPi * n_periods;
    p.tol = tol;
    return p;
}

double mismatch(const ShootingProblem& problem, double delta) {
    return mismatch_impl(problem, delta);
}

GapMode solve_bvp(const ShootingProblem& problem, int n, int samples) {
    const GapEdges edges =
        gap_edges(problem.params.epsilon, n, std::min(problem.tol, 1e-10));
    const double delta = find_bvp_delta(problem, n, edges);
    const double T = problem.match_time;
    // Profiles extend past the match radius by the exact Floquet relation so
    // short match windows (narrow Gaussians need only one period) still show
    // the full decaying envelope.
    const double W = std::max(T, 40.0 * kPi);

    if (samples <= 0) {
        const int per_side = static_cast<int>(std::ceil(W / 0.35));
        samples = 2 * per_side + 1;
    }
    if (samples < 3) samples = 3;

    GapMode mode;
    mode.params = MathieuParams{delta, problem.params.epsilon};
    mode.kick = problem.kick;
    mode.lambda = integrated_strength(problem.kick);
    mode.gap_index = n;

    mode.t.resize(samples);
    for (int k = 0; k < samples; ++k)
        mode.t[k] = -W + 2.0 * W * k / (samples - 1);

    std::vector<double> plus_times, minus_times;  // shooting region, |t| <= T
    std::vector<int> plus_idx, minus_idx;
    std::vector<double> ext_p_dist, ext_m_dist;  // beyond the match radius
    std::vector<int> ext_p_idx, ext_m_idx;
    for (int k = 0; k < samples; ++k) {
        const double t = mode.t[k];
        if (t >= 0.0) {
            if (t <= T) {
                plus_times.push_back(t);
                plus_idx.push_back(k);
            } else {
                ext_p_dist.push_back(t - T);
                ext_p_idx.push_back(k);
            }
        } else {
            if (t >= -T) {
                minus_times.push_back(t);
                minus_idx.push_back(k);
            } else {
                ext_m_dist.push_back(-t - T);
                ext_m_idx.push_back(k);
            }
        }
    }
    std::reverse(plus_times.begin(), plus_times.end());  // walk from +T down
    std::reverse(plus_idx.begin(), plus_idx.end());
    std::reverse(ext_m_dist.begin(), ext_m_dist.end());  // outward, ascending
    std::reverse(ext_m_idx.begin(), ext_m_idx.end());

    const double integ_tol = std::min(1e-10, problem.tol);
    const GapEigen ge = gap_eigen({delta, problem.params.epsilon}, integ_tol);
    std::vector<std::pair<double, double>> rec_p, rec_m;
    const BranchEnd end_p =
        shoot_branch(problem, delta, +1, ge, plus_times, &rec_p);
    const BranchEnd end_m =
        shoot_branch(problem, delta, -1, ge, minus_times, &rec_m);

    // Scale the minus branch so the two shooting states agree at t = 0.
    const double c = (end_p.x * end_m.x + end_p.v * end_m.v) /
                     (end_m.x * end_m.x + end_m.v * end_m.v);

    mode.x.assign(samples, 0.0);
    for (std::size_t i = 0; i < plus_idx.size(); ++i)
        mode.x[plus_idx[i]] =
            rec_p[i].first * std::exp(rec_p[i].second - end_p.log_scale);
    for (std::size_t i = 0; i < minus_idx.size(); ++i)
        mode.x[minus_idx[i]] =
            c * rec_m[i].first * std::exp(rec_m[i].second - end_m.log_scale);

    // Beyond +-T the branches are the unperturbed decaying Floquet solutions
    // anchored at the end states, continued period by period.
    const MathieuParams params{delta, problem.params.epsilon};
    std::vector<double> vals;
    detail::walk_decaying_branch(params, ge.xd, ge.vd, +1, ext_p_dist, ge.mu, vals,
                                 integ_tol);
    for (std::size_t i = 0; i < ext_p_idx.size(); ++i)
        mode.x[ext_p_idx[i]] = vals[i] * std::exp(-end_p.log_scale);
    vals.clear();
    detail::walk_decaying_branch(params, ge.xd, -ge.vd, -1, ext_m_dist, ge.mu, vals,
                                 integ_tol);
    for (std::size_t i = 0; i < ext_m_idx.size(); ++i)
        mode.x[ext_m_idx[i]] = c * vals[i] * std::exp(-end_m.log_scale);

    double peak = 0.0;
    for (double x : mode.x) peak = std::max(peak, std::abs(x));
    if (peak > 0.0)
        for (double& x : mode.x) x /= peak;

    try {
        mode.measured_decay = fit_envelope(mode.t, mode.x).rate;
    } catch (const EnvelopeFitError&) {
        mode.measured_decay = std::numeric_limits<double>::quiet_NaN();
    }
    if (n == 1) mode.delta1 = (delta - 0.25) / problem.params.epsilon;
    return mode;
}

std::vector<WidthPoint> width_sweep(double epsilon, double lambda, int n,
                                    const std::vector<double>& widths,
                                    double tol) {
    if (widths.empty()) throw PreconditionError("width_sweep: widths list is empty");
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (!(widths[i] > 0.0))
            throw PreconditionError("width_sweep: widths must be positive");
        if (i > 0 && !(widths[i] < widths[i - 1]))
            throw PreconditionError("width_sweep: widths must be sorted descending");
    }
    const GapEdges edges = gap_edges(epsilon, n, std::min(tol, 1e-10));
    std::vector<WidthPoint> out;
    out.reserve(widths.size());
    for (double w : widths) {
        const ShootingProblem p = make_shooting(epsilon, GaussianKick{lambda, w}, tol);
        out.push_back({w, find_bvp_delta(p, n, edges)});
    }
    return out;
}

double boundary_validity_defect(const ShootingProblem& problem, double delta) {
    const GapEigen ge = gap_eigen({delta, problem.params.epsilon},
                                  std::min(1e-10, problem.tol));
    const MathieuParams params{delta, problem.params.epsilon};
    const double T = problem.match_time;
    const double integ_tol = std::min(1e-10, problem.tol);

    const State sp = propagate(params, problem.kick, State{ge.xd, ge.vd, T},
                               T + kTwoPi, integ_tol);
    const double dp = std::hypot(sp.x - ge.mu * ge.xd, sp.v - ge.mu * ge.vd);

    const State sm = propagate(params, problem.kick, State{ge.xd, -ge.vd, -T},
                               -T - kTwoPi, integ_tol);
    const double dm = std::hypot(sm.x - ge.mu * ge.xd, sm.v - ge.mu * (-ge.vd));

    return std::max(dp, dm);
}

}  // namespace gapmodes
