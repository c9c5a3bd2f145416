#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gapmodes/asymptotics.hpp"
#include "gapmodes/delta_kick.hpp"
#include "oracles.hpp"

using namespace gapmodes;
using oracles::kPi;
using oracles::kTwoPi;

TEST_CASE("lambda_required approaches 1 at the tongue center as eps -> 0") {
    // delta = 1/4 + eps*delta1 with delta1 = 0 maps to lambda = 1 + O(eps)
    for (double eps : {0.01, 0.02, 0.05}) {
        const double lam = lambda_required({0.25, eps});
        CHECK(std::abs(lam - 1.0) < eps);
    }
}

TEST_CASE("lambda_required matches the long-window shooting value") {
    // frozen value at the Fig.-1-style interior point
    const double lam = lambda_required({0.25, 0.3});
    CHECK(lam == doctest::Approx(1.2015578114).epsilon(1e-8));
    CHECK(lam == doctest::Approx(oracles::lambda_shooting({0.25, 0.3}, 6)).epsilon(1e-8));
    CHECK(lambda_required({0.3, 0.3}) ==
          doctest::Approx(oracles::lambda_shooting({0.3, 0.3}, 6)).epsilon(1e-8));
}

TEST_CASE("lambda_required sign pattern across tongues") {
    // positive throughout the odd tongues; the even tongue needs a negative
    // strength when the kick sits at the cosine maximum
    for (double eps : {0.05, 0.3}) {
        for (int n : {1, 3}) {
            const GapEdges e = gap_edges(eps, n);
            for (int k = 1; k <= 20; ++k) {
                const double d = e.lower + e.width() * k / 21.0;
                CHECK(lambda_required({d, eps}) > 0.0);
            }
        }
        const GapEdges e2 = gap_edges(eps, 2);
        for (int k = 1; k <= 20; ++k) {
            const double d = e2.lower + e2.width() * k / 21.0;
            CHECK(lambda_required({d, eps}) < 0.0);
        }
    }
}

TEST_CASE("lambda_required diverges toward the pole edge") {
    const GapEdges e = gap_edges(0.3, 1);
    CHECK(lambda_required({e.lower + 0.999 * e.width(), 0.3}) > 20.0);
    CHECK(lambda_required({e.lower + 0.001 * e.width(), 0.3}) < 0.1);
}

TEST_CASE("lambda_required rejects out-of-gap points") {
    CHECK_THROWS_AS(lambda_required({0.1, 0.1}), NotInGapError);
    CHECK_THROWS_AS(lambda_required({0.25, 0.0}), NotInGapError);
}

TEST_CASE("solve_delta at the Fig. 1 operating point") {
    const double d = solve_delta(0.7, 0.5, 1);
    CHECK(d == doctest::Approx(0.12586727733).epsilon(1e-8));
    const GapEdges e = gap_edges(0.5, 1);
    CHECK(e.contains(d));
    CHECK(lambda_required({d, 0.5}) == doctest::Approx(0.7).epsilon(1e-8));
}

TEST_CASE("solve_delta recovers the small-eps center at lambda = 1") {
    const double d = solve_delta(1.0, 0.01, 1);
    CHECK(std::abs(d - 0.25) < 2e-4);  // delta1(1) = 0, so only O(eps^2) remains
}

TEST_CASE("solve_delta finds modes in the odd tongues at eps = 0.5") {
    for (int n : {1, 3}) {
        const double d = solve_delta(1.0, 0.5, n);
        const GapEdges e = gap_edges(0.5, n);
        CHECK(e.contains(d));
        CHECK(lambda_required({d, 0.5}) == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("solve_delta rejects nonpositive strengths") {
    CHECK_THROWS_AS(solve_delta(0.0, 0.3, 1), NoGapModeError);
    CHECK_THROWS_AS(solve_delta(-0.7, 0.3, 1), NoGapModeError);
}

TEST_CASE("even tongue has no positive-strength mode") {
    // the matching strength is negative throughout tongue 2 for a kick at the
    // cosine maximum, so a positive target reports no root with a scan table
    try {
        solve_delta(1.0, 0.5, 2);
        FAIL("expected RootNotFoundError");
    } catch (const RootNotFoundError& e) {
        CHECK(!e.scan_table.empty());
    }
}

TEST_CASE("lambda_required is strictly monotone across tested gap interiors") {
    for (auto [eps, n] :
         {std::pair{0.3, 1}, {0.5, 1}, {0.3, 2}, {0.5, 2}, {0.3, 3}, {0.5, 3}}) {
        const GapEdges e = gap_edges(eps, n);
        double prev = -1e300;
        for (int k = 1; k <= 30; ++k) {
            const double d = e.lower + e.width() * k / 31.0;
            const double lam = lambda_required({d, eps});
            CHECK(lam > prev);
            prev = lam;
        }
    }
}

TEST_CASE("wronskian of the two branches") {
    for (auto [delta, eps] : {std::pair{0.25, 0.3}, {0.3, 0.3}}) {
        const double w = wronskian_check({delta, eps});
        CHECK(std::abs(w) > 0.0);
        // identity: W = -lambda * m+(0) * m-(0)
        const GapEigen ge = gap_eigen({delta, eps});
        const double lam = lambda_required({delta, eps});
        CHECK(std::abs(w + lam * ge.xd * ge.xd) < 1e-7);
    }
}

TEST_CASE("build_profile assembles an even, decaying, jump-consistent mode") {
    const double eps = 0.5;
    const double d = solve_delta(0.7, eps, 1);
    const double T = 40 * kPi;
    const GapMode mode = build_profile(d, eps, 0.7, T, 4001);

    REQUIRE(mode.t.size() == 4001);
    CHECK(mode.gap_index == 1);
    REQUIRE(mode.delta1.has_value());
    CHECK(*mode.delta1 == doctest::Approx((d - 0.25) / eps));

    double peak = 0.0, parity = 0.0;
    for (std::size_t k = 0; k < mode.x.size(); ++k) {
        peak = std::max(peak, std::abs(mode.x[k]));
        parity = std::max(parity,
                          std::abs(mode.x[k] - mode.x[mode.x.size() - 1 - k]));
    }
    CHECK(peak == doctest::Approx(1.0));
    CHECK(parity < 1e-6);
    CHECK(std::abs(mode.x.front()) < 1e-3);
    CHECK(std::abs(mode.x.back()) < 1e-3);

    // derivative jump from the branch states
    const GapEigen ge = gap_eigen({d, eps});
    CHECK(std::abs(2.0 * ge.vd - 0.7 * ge.xd) < 1e-6);

    // fitted envelope equals the Floquet rate
    const double rate = -std::log(std::abs(ge.mu)) / kTwoPi;
    CHECK(mode.measured_decay == doctest::Approx(rate).epsilon(0.02));
}

TEST_CASE("build_profile rejects inconsistent strengths and edge points") {
    const double d = solve_delta(0.7, 0.5, 1);
    CHECK_THROWS_AS(build_profile(d, 0.5, 0.7 + 1e-3, 20 * kPi, 801),
                    InconsistentModeError);
    CHECK_THROWS_AS(build_profile(0.25, 0.0, 0.1, 20 * kPi, 801), NotInGapError);
}

TEST_CASE("spectral flow is increasing and spans the gap") {
    const auto flow = spectral_flow(0.01, 1, {0.5, 1.0, 2.0});
    REQUIRE(flow.size() == 3);
    CHECK(flow[0].delta < flow[1].delta);
    CHECK(flow[1].delta < flow[2].delta);
    CHECK(std::abs(flow[1].delta - 0.25) < 1e-4);
    // delta1 against the closed form at small eps
    for (const auto& fp : flow) {
        const double d1 = (fp.delta - 0.25) / 0.01;
        CHECK(std::abs(d1 - delta1_of_lambda(fp.lambda)) < 0.03);
    }

    CHECK_THROWS_AS(spectral_flow(0.01, 1, {1.0, 0.5}), PreconditionError);
    CHECK_THROWS_AS(spectral_flow(0.01, 1, {-1.0, 0.5}), PreconditionError);
    CHECK_THROWS_AS(spectral_flow(0.01, 1, {}), PreconditionError);
}
