#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gapmodes/ode.hpp"
#include "oracles.hpp"

using namespace gapmodes;
using oracles::kPi;
using oracles::kTwoPi;

TEST_CASE("potential_value basics") {
    CHECK(potential_value({0.25, 0.0}, NoKick{}, 3.7) == doctest::Approx(0.25));
    CHECK(potential_value({0.25, 0.5}, NoKick{}, 0.0) == doctest::Approx(0.75));
    // shear kick at the origin is exactly -s^2
    CHECK(potential_value({0.0, 0.0}, TaeShearKick{1.0}, 0.0) == doctest::Approx(-1.0));
    CHECK(potential_value({0.0, 0.0}, TaeShearKick{2.0}, 0.0) == doctest::Approx(-4.0));
}

TEST_CASE("dirac kick is rejected by the quadrature path") {
    CHECK_THROWS_AS(potential_value({0.25, 0.1}, DiracKick{1.0}, 0.0), PreconditionError);
    CHECK_THROWS_AS(propagate({0.25, 0.1}, DiracKick{1.0}, State{1, 0, 0}, 1.0),
                    PreconditionError);
    CHECK_THROWS_AS(kick_value(DiracKick{1.0}, 0.0), PreconditionError);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(propagate({0.25, -0.1}, NoKick{}, State{1, 0, 0}, 1.0),
                    PreconditionError);
    CHECK_THROWS_AS(propagate({0.25, 0.1}, NoKick{}, State{1, 0, 0}, 1.0, -1e-8),
                    PreconditionError);
    CHECK_THROWS_AS(propagate({0.25, 0.1}, GaussianKick{1.0, 0.0}, State{1, 0, 0}, 1.0),
                    PreconditionError);
}

TEST_CASE("kick profiles carry unit mass") {
    // Gaussian: quadrature over +-12 sigma captures everything
    for (double w : {0.05, 0.25, 1.0}) {
        const double mass = oracles::simpson(
            [w](double t) { return -kick_value(GaussianKick{1.0, w}, t); }, -12 * w,
            12 * w, 20000);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
    // Lorentzian tails are slow; account for the truncated mass analytically
    for (double w : {0.05, 0.25}) {
        const double T = 2000.0 * w;
        const double mass = oracles::simpson(
            [w](double t) { return -kick_value(LorentzianKick{1.0, w}, t); }, -T, T,
            400000);
        const double tail = 1.0 - 2.0 / kPi * std::atan(T / w);
        CHECK(mass + tail == doctest::Approx(1.0).epsilon(1e-6));
    }
    // TAE shear kick integrates to pi*s/2
    for (double s : {0.5, 1.0}) {
        const double T = 4000.0 / s;
        const double mass = oracles::simpson(
            [s](double t) { return -kick_value(TaeShearKick{s}, t); }, -T, T, 400000);
        CHECK(mass == doctest::Approx(integrated_strength(TaeShearKick{s})).epsilon(1e-6));
        CHECK(integrated_strength(TaeShearKick{s}) == doctest::Approx(kPi * s / 2));
    }
}

TEST_CASE("propagate reproduces closed forms at epsilon = 0") {
    // x(t) = cos(t/2)
    State s = propagate({0.25, 0.0}, NoKick{}, State{1.0, 0.0, 0.0}, kTwoPi);
    CHECK(s.x == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(s.v) < 1e-9);
    // x(t) = sin(t)
    s = propagate({1.0, 0.0}, NoKick{}, State{0.0, 1.0, 0.0}, kPi / 2);
    CHECK(s.x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(s.v) < 1e-9);
}

TEST_CASE("propagate agrees with the fixed-step reference integrator") {
    const MathieuParams p{0.25, 0.1};
    const State s = propagate(p, NoKick{}, State{1.0, 0.0, 0.0}, kTwoPi);
    // frozen from the step-halved RK4 reference
    CHECK(s.x == doctest::Approx(-1.0492912627).epsilon(1e-9));
    CHECK(s.v == doctest::Approx(0.16509672502).epsilon(1e-9));
    const auto ref =
        oracles::rk4_converged(oracles::mathieu_potential(p), 0.0, kTwoPi, {1.0, 0.0});
    CHECK(s.x == doctest::Approx(ref[0]).epsilon(1e-9));
    CHECK(s.v == doctest::Approx(ref[1]).epsilon(1e-9));
}

TEST_CASE("backward propagation inverts forward propagation") {
    const MathieuParams p{0.7, 0.35};
    State s = propagate(p, NoKick{}, State{0.3, -1.1, 0.0}, kTwoPi);
    s = propagate(p, NoKick{}, s, 0.0);
    CHECK(s.x == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(s.v == doctest::Approx(-1.1).epsilon(1e-8));
}

TEST_CASE("fundamental matrix closed forms and determinant") {
    Mat2 m = fundamental_matrix({0.25, 0.0}, NoKick{}, 0.0, kTwoPi);
    CHECK(m.m00 == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(m.m11 == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(m.m01) < 1e-9);
    CHECK(std::abs(m.m10) < 1e-9);

    const double delta = 0.7, T = 1.3;
    m = fundamental_matrix({delta, 0.0}, NoKick{}, 0.0, T);
    const Mat2 cf = oracles::constant_potential_matrix(delta, T);
    CHECK(m.m00 == doctest::Approx(cf.m00).epsilon(1e-10));
    CHECK(m.m01 == doctest::Approx(cf.m01).epsilon(1e-10));
    CHECK(m.m10 == doctest::Approx(cf.m10).epsilon(1e-10));
    CHECK(m.m11 == doctest::Approx(cf.m11).epsilon(1e-10));

    m = fundamental_matrix({0.3, 0.2}, NoKick{}, 0.0, kTwoPi);
    CHECK(std::abs(m.det() - 1.0) < 1e-9);
}

TEST_CASE("determinant stays at one across parameters and spans") {
    const double tol = 1e-10;
    for (double delta : {0.1, 0.7, 1.3, 2.2}) {
        for (double eps : {0.0, 0.2, 0.5}) {
            for (double span : {kPi, kTwoPi}) {
                const Mat2 m = fundamental_matrix({delta, eps}, NoKick{}, 0.0, span, tol);
                CHECK(std::abs(m.det() - 1.0) < 10 * tol);
            }
            // drift accumulates with the solution growth over long spans;
            // the stepper is not symplectic and does not pretend to be
            const Mat2 m = fundamental_matrix({delta, eps}, NoKick{}, 0.0, 6 * kTwoPi, tol);
            CHECK(std::abs(m.det() - 1.0) < 1e-7);
        }
    }
}

TEST_CASE("time reversal composes to the identity") {
    const double tol = 1e-10;
    for (auto [delta, eps] : {std::pair{0.3, 0.2}, {1.1, 0.4}, {0.25, 0.5}}) {
        const Mat2 f = fundamental_matrix({delta, eps}, NoKick{}, 0.0, kTwoPi, tol);
        const Mat2 b = fundamental_matrix({delta, eps}, NoKick{}, kTwoPi, 0.0, tol);
        const Mat2 prod = b * f;
        CHECK(prod.m00 == doctest::Approx(1.0).epsilon(10 * tol));
        CHECK(prod.m11 == doctest::Approx(1.0).epsilon(10 * tol));
        CHECK(std::abs(prod.m01) < 10 * tol);
        CHECK(std::abs(prod.m10) < 10 * tol);
    }
}

TEST_CASE("tightening tol tightens the closed-form error") {
    // x(2pi) = -1 exactly at delta = 0.25, eps = 0
    auto err_at = [](double tol) {
        const State s = propagate({0.25, 0.0}, NoKick{}, State{1, 0, 0}, kTwoPi, tol);
        return std::abs(s.x + 1.0) + std::abs(s.v);
    };
    const double e6 = err_at(1e-6), e8 = err_at(1e-8), e10 = err_at(1e-10);
    CHECK(e8 < e6);
    CHECK(e10 < e8);
    CHECK(e8 < e6 / 5.0);  // two decades of tol buy well over one decade
    CHECK(e10 < 1e-9);
}

TEST_CASE("reference integrator converges at fourth order") {
    // sanity check of the test oracle itself against x(2pi) = -1
    auto err_at = [](long n) {
        const auto y = oracles::rk4(oracles::mathieu_potential({0.25, 0.0}), 0.0,
                                    kTwoPi, {1.0, 0.0}, n);
        return std::abs(y[0] + 1.0) + std::abs(y[1]);
    };
    const double ratio = err_at(200) / err_at(400);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("narrow kicks are resolved, not stepped over") {
    const MathieuParams p{0.3, 0.2};
    const GaussianKick kick{1.0, 0.02};
    const State s = propagate(p, kick, State{1.0, 0.0, -0.5}, 0.5);
    auto pot = [&](double t) { return potential_value(p, kick, t); };
    const auto ref = oracles::rk4(pot, -0.5, 0.5, {1.0, 0.0}, 2'000'000);
    CHECK(s.x == doctest::Approx(ref[0]).epsilon(1e-8));
    CHECK(s.v == doctest::Approx(ref[1]).epsilon(1e-8));
}
