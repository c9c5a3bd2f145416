#pragma once

// Period-map analysis of the Mathieu equation: stability classification,
// Arnold-tongue edges, and the Floquet solutions m+/m- that decay as
// t -> +inf / -inf inside an instability tongue.

#include <vector>

#include "gapmodes/ode.hpp"
#include "gapmodes/types.hpp"

namespace gapmodes {

inline constexpr double kEdgeTol = 1e-9;

struct Monodromy {
    Mat2 matrix;   // period map over [0, 2*pi]
    double trace;  // |trace| > 2 inside a tongue
};

enum class Direction { Plus, Minus };

// A decaying Floquet solution. init state normalized to x0^2 + v0^2 = 1 with
// x0 >= 0; the Minus direction is the parity image (x0, -v0) of Plus, valid
// because the potential is even in t.
struct FloquetMode {
    double multiplier;  // eigenvalue mu of the period map, |mu| < 1
    double exponent;    // ln|mu| / (2*pi), negative for a decaying branch
    double x0;
    double v0;
    Direction direction;
};

struct StabilityClass {
    enum class Kind { Stable, Unstable, Edge };
    Kind kind;
    // Tongue number for Unstable points: the n with the tongue opening from
    // delta = n^2/4 as epsilon -> 0. Index 0 marks the unbounded instability
    // region below the first band (delta < 0 at epsilon = 0).
    int gap_index = -1;

    bool stable() const { return kind == Kind::Stable; }
    bool unstable() const { return kind == Kind::Unstable; }
    bool edge() const { return kind == Kind::Edge; }
};

struct GapEdges {
    double lower;
    double upper;
    double width() const { return upper - lower; }
    bool contains(double delta) const { return delta > lower && delta < upper; }
};

// Both Floquet eigenvectors of an in-gap period map, computed from the
// half-period matrix via the even-symmetry factorization M = P A^{-1} P A.
// This avoids the cancellation that makes the direct eigenproblem unusable
// in narrow tongues. States are unit-norm with nonnegative x component.
struct GapEigen {
    double mu;         // decaying multiplier, |mu| < 1, sign (-1)^n
    double splitting;  // |mu - 1/mu|
    double xd, vd;     // decaying eigenvector (m+ at t = 0)
    double xg, vg;     // growing eigenvector (m- at t = 0, up to parity)
};

Monodromy monodromy(const MathieuParams& params, double tol = kDefaultTol);

StabilityClass classify(const MathieuParams& params, double edge_tol = kEdgeTol,
                        double tol = kDefaultTol);

// The two roots of |trace| = 2 bracketing tongue n, located through the
// half-period functions c(pi), s(pi), c'(pi), s'(pi) whose simple zeros
// factor trace -+ 2, then refined by bracketed root finding to tol.
GapEdges gap_edges(double epsilon, int n, double tol = 1e-10);

GapEigen gap_eigen(const MathieuParams& params, double tol = kDefaultTol);

FloquetMode decaying_mode(const MathieuParams& params, Direction direction,
                          double tol = kDefaultTol);

struct ChartEntry {
    double delta;
    double epsilon;
    StabilityClass cls;
};

// Row-major grid: delta varies fastest.
std::vector<ChartEntry> stability_chart(double delta_min, double delta_max,
                                        double eps_min, double eps_max,
                                        int n_delta, int n_eps,
                                        double edge_tol = kEdgeTol,
                                        double tol = kDefaultTol);

}  // namespace gapmodes
