#pragma once

#include <stdexcept>
#include <string>
#include <variant>

namespace gapmodes {

// Parameters of x'' + (delta + epsilon*cos(t)) x = 0.
// epsilon >= 0; a negative modulation amplitude is equivalent to a
// half-period time shift and is rejected rather than silently absorbed.
struct MathieuParams {
    double delta = 0.0;
    double epsilon = 0.0;
};

// Phase-space sample (x, dx/dt) at time t.
struct State {
    double x = 0.0;
    double v = 0.0;
    double t = 0.0;
};

// Localized perturbations F(t) added to the potential.
// Gaussian and Lorentzian profiles carry unit mass, so F(t) = -strength*g_w(t)
// converges to -strength*delta(t) as the width goes to zero.
struct NoKick {};
struct DiracKick {
    double strength = 0.0;  // F = -strength * delta(t), handled by jump matching only
};
struct GaussianKick {
    double strength = 0.0;
    double width = 1.0;  // standard deviation of g_w(t) = exp(-t^2/2w^2)/(w sqrt(2 pi))
};
struct LorentzianKick {
    double strength = 0.0;
    double width = 1.0;  // half-width of g_w(t) = (1/pi) w/(w^2 + t^2)
};
struct TaeShearKick {
    double shear = 1.0;  // F = -s^2/(1 + s^2 t^2)^2
};

using KickSpec = std::variant<NoKick, DiracKick, GaussianKick, LorentzianKick, TaeShearKick>;

bool is_dirac(const KickSpec& kick);
bool is_none(const KickSpec& kick);

// F(t). Rejects the Dirac variant: a point kick never enters quadrature.
double kick_value(const KickSpec& kick, double t);

// Characteristic time scale of the kick; 0 when there is no narrow feature.
double kick_width_scale(const KickSpec& kick);

// Integral of -F over the whole line: lambda for Dirac/Gaussian/Lorentzian
// kicks and pi*s/2 for the shear form.
double integrated_strength(const KickSpec& kick);

std::string kick_name(const KickSpec& kick);

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated an operation's stated preconditions.
struct PreconditionError : Error {
    using Error::Error;
};

struct IntegrationError : Error {
    IntegrationError(const std::string& what, const State& last)
        : Error(what), last_state(last) {}
    State last_state;  // last accepted state before failure
};

struct NotInGapError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Floquet multipliers too close to coalescence to separate numerically.
struct NearDegenerateError : Error {
    using Error::Error;
};

// m+(0) vanishes: the required kick strength diverges (odd-parity limit).
struct PoleError : Error {
    using Error::Error;
};

// Requested a bound mode with kick strength <= 0.
struct NoGapModeError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct RootNotFoundError : Error {
    RootNotFoundError(const std::string& what, std::string scan)
        : Error(what + "\n" + scan), scan_table(std::move(scan)) {}
    std::string scan_table;
};

struct EdgeNotFoundError : Error {
    EdgeNotFoundError(const std::string& what, double lo, double hi)
        : Error(what), scan_lower(lo), scan_upper(hi) {}
    double scan_lower;
    double scan_upper;
};

struct NoModeFoundError : Error {
    NoModeFoundError(const std::string& what, std::string scan)
        : Error(what + "\n" + scan), scan_table(std::move(scan)) {}
    std::string scan_table;
};

struct EnvelopeFitError : Error {
    using Error::Error;
};

struct InconsistentModeError : Error {
    using Error::Error;
};

}  // namespace gapmodes
