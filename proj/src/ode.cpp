#include "gapmodes/ode.hpp"

#include <cmath>

#include "dopri5.hpp"

namespace gapmodes {

namespace {

// Pre-dispatched potential so the stepper's inner loop avoids std::visit.
struct Potential {
    double delta;
    double epsilon;
    int kind;  // 0 none, 1 gaussian, 2 lorentzian, 3 tae
    double p0 = 0.0;
    double p1 = 0.0;

    double operator()(double t) const {
        double f = 0.0;
        switch (kind) {
            case 1: f = -p0 * std::exp(-p1 * t * t); break;
            case 2: f = -p0 / (p1 + t * t); break;
            case 3: {
                const double q = 1.0 + p0 * t * t;
                f = -p0 / (q * q);
                break;
            }
            default: break;
        }
        return delta + epsilon * std::cos(t) + f;
    }
};

constexpr double kSqrt2Pi = 2.50662827463100050242;

Potential make_potential(const MathieuParams& params, const KickSpec& kick) {
    if (!std::isfinite(params.delta))
        throw PreconditionError("MathieuParams: delta must be finite");
    if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon))
        throw PreconditionError("MathieuParams: epsilon must be finite and >= 0");
    Potential p{params.delta, params.epsilon, 0};
    std::visit(
        [&p](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, DiracKick>) {
                throw PreconditionError(
                    "ode: Dirac kick cannot be integrated; use jump matching");
            } else if constexpr (std::is_same_v<K, GaussianKick>) {
                if (!(k.width > 0.0))
                    throw PreconditionError("GaussianKick: width must be positive");
                p.kind = 1;
                p.p0 = k.strength / (k.width * kSqrt2Pi);
                p.p1 = 0.5 / (k.width * k.width);
            } else if constexpr (std::is_same_v<K, LorentzianKick>) {
                if (!(k.width > 0.0))
                    throw PreconditionError("LorentzianKick: width must be positive");
                p.kind = 2;
                p.p0 = k.strength * k.width / 3.14159265358979323846;
                p.p1 = k.width * k.width;
            } else if constexpr (std::is_same_v<K, TaeShearKick>) {
                if (!(k.shear > 0.0))
                    throw PreconditionError("TaeShearKick: shear must be positive");
                p.kind = 3;
                p.p0 = k.shear * k.shear;
            }
        },
        kick);
    return p;
}

}  // namespace

double potential_value(const MathieuParams& params, const KickSpec& kick, double t) {
    return make_potential(params, kick)(t);
}

State propagate(const MathieuParams& params, const KickSpec& kick, State state,
                double t_end, double tol) {
    const Potential pot = make_potential(params, kick);
    detail::StepLimits lim;
    lim.kick_width = kick_width_scale(kick);
    auto rhs = [&pot](double t, const detail::Vec<2>& y, detail::Vec<2>& dy) {
        dy[0] = y[1];
        dy[1] = -pot(t) * y[0];
    };
    const auto y = detail::dopri5<2>(rhs, state.t, t_end, {state.x, state.v}, tol, lim);
    return State{y[0], y[1], t_end};
}

Mat2 fundamental_matrix(const MathieuParams& params, const KickSpec& kick,
                        double t0, double t1, double tol) {
    const Potential pot = make_potential(params, kick);
    detail::StepLimits lim;
    lim.kick_width = kick_width_scale(kick);
    auto rhs = [&pot](double t, const detail::Vec<4>& y, detail::Vec<4>& dy) {
        const double p = pot(t);
        dy[0] = y[1];
        dy[1] = -p * y[0];
        dy[2] = y[3];
        dy[3] = -p * y[2];
    };
    const auto y =
        detail::dopri5<4>(rhs, t0, t1, {1.0, 0.0, 0.0, 1.0}, tol, lim);
    return Mat2{y[0], y[2], y[1], y[3]};
}

}  // namespace gapmodes
