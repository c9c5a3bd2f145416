#include "gapmodes/asymptotics.hpp"

#include <cmath>
#include <vector>

#include "gapmodes/delta_kick.hpp"

namespace gapmodes {

double delta1_of_lambda(double lambda) {
    if (!(lambda > 0.0))
        throw PreconditionError(
            "delta1_of_lambda: the gap-mode branch only exists for lambda > 0");
    return (lambda * lambda - 1.0) / (2.0 * (1.0 + lambda * lambda));
}

double lambda_of_delta1(double delta1) {
    if (!(std::abs(delta1) < 0.5))
        throw PreconditionError("lambda_of_delta1: delta1 must lie in (-1/2, 1/2)");
    return std::sqrt((1.0 + 2.0 * delta1) / (1.0 - 2.0 * delta1));
}

double decay_rate(double lambda, double epsilon) {
    if (!(epsilon > 0.0))
        throw PreconditionError("decay_rate: epsilon must be positive");
    const double d1 = delta1_of_lambda(lambda);
    return epsilon * std::sqrt(0.25 - d1 * d1);
}

AsymptoticPrediction predict(double lambda) {
    AsymptoticPrediction p;
    p.lambda = lambda;
    p.delta1 = delta1_of_lambda(lambda);
    p.decay_rate_per_eps = std::sqrt(0.25 - p.delta1 * p.delta1);
    // Slow-flow amplitude ratio; with y'(0) = B/2 this chain reproduces
    // lambda = (B+ - B-)/(2A) from the derivative jump.
    p.amp_ratio_plus = std::sqrt((1.0 + 2.0 * p.delta1) / (1.0 - 2.0 * p.delta1));
    p.amp_ratio_minus = -p.amp_ratio_plus;
    return p;
}

EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> x) {
    if (t.size() != x.size() || t.size() < 3)
        throw PreconditionError("fit_envelope: need matching t/x series");

    double peak = 0.0;
    for (double xi : x) peak = std::max(peak, std::abs(xi));
    if (!(peak > 0.0)) throw EnvelopeFitError("fit_envelope: profile is all zero");

    std::vector<double> tp, lp, tn, ln_;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double a = std::abs(x[i]);
        if (a >= std::abs(x[i - 1]) && a > std::abs(x[i + 1]) && a > 1e-14 * peak) {
            if (t[i] > 0.0) {
                tp.push_back(t[i]);
                lp.push_back(std::log(a));
            } else if (t[i] < 0.0) {
                tn.push_back(t[i]);
                ln_.push_back(std::log(a));
            }
        }
    }
    if (tp.size() < 10 || tn.size() < 10)
        throw EnvelopeFitError(
            "fit_envelope: need at least 10 extrema on each side of t = 0");

    auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        const std::size_t n = xs.size();
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= n;
        my /= n;
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        return sxy / sxx;
    };

    EnvelopeFit fit;
    fit.rate_pos = std::abs(slope(tp, lp));
    fit.rate_neg = std::abs(slope(tn, ln_));
    fit.rate = 0.5 * (fit.rate_pos + fit.rate_neg);
    fit.asymmetry = std::abs(fit.rate_pos - fit.rate_neg);
    return fit;
}

std::vector<AsymRow> compare_asymptotic(const std::vector<double>& eps_list,
                                        const std::vector<double>& lambda_list) {
    for (double e : eps_list)
        if (!(e > 0.0 && e <= 0.1))
            throw PreconditionError(
                "compare_asymptotic: epsilon values must lie in (0, 0.1]");
    for (double l : lambda_list)
        if (!(l > 0.0))
            throw PreconditionError("compare_asymptotic: lambdas must be positive");

    std::vector<AsymRow> rows;
    rows.reserve(eps_list.size() * lambda_list.size());
    for (double eps : eps_list) {
        for (double lam : lambda_list) {
            AsymRow r;
            r.epsilon = eps;
            r.lambda = lam;
            r.delta1_numeric = (solve_delta(lam, eps, 1) - 0.25) / eps;
            r.delta1_formula = delta1_of_lambda(lam);
            r.error = std::abs(r.delta1_numeric - r.delta1_formula);
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace gapmodes
