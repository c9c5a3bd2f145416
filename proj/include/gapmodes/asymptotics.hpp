#pragma once

// Small-epsilon predictions for the first tongue from the multiple-scales
// analysis (delta ~ 1/4 + eps*delta1), plus envelope fitting to compare the
// predicted decay rate against computed profiles.

#include <span>
#include <vector>

#include "gapmodes/types.hpp"

namespace gapmodes {

struct AsymptoticPrediction {
    double lambda;
    double delta1;              // (lambda^2 - 1) / (2 (1 + lambda^2))
    double decay_rate_per_eps;  // sqrt(1/4 - delta1^2)
    double amp_ratio_plus;      // B+/A+ of the slow-flow solution
    double amp_ratio_minus;     // B-/A- = -B+/A+
};

// delta1(lambda) on the gap-mode branch; domain lambda > 0.
double delta1_of_lambda(double lambda);

// Exact inverse sqrt((1 + 2 d1)/(1 - 2 d1)); domain |delta1| < 1/2.
double lambda_of_delta1(double delta1);

// Envelope decay rate eps * sqrt(1/4 - delta1(lambda)^2).
double decay_rate(double lambda, double epsilon);

AsymptoticPrediction predict(double lambda);

struct EnvelopeFit {
    double rate;       // mean of the two per-side slope magnitudes
    double rate_pos;   // |slope| of ln|extrema| vs t on t > 0
    double rate_neg;   // |slope| on t < 0
    double asymmetry;  // |rate_pos - rate_neg|
};

// Least-squares slope of ln|extremum| on each side of t = 0. Requires at
// least 10 interior extrema per side.
EnvelopeFit fit_envelope(std::span<const double> t, std::span<const double> x);

struct AsymRow {
    double epsilon;
    double lambda;
    double delta1_numeric;  // (solve_delta(lambda, eps, 1) - 1/4)/eps
    double delta1_formula;
    double error;
};

// Numeric-vs-formula comparison table over the grid eps_list x lambda_list.
std::vector<AsymRow> compare_asymptotic(const std::vector<double>& eps_list,
                                        const std::vector<double>& lambda_list);

}  // namespace gapmodes
