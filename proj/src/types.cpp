#include "gapmodes/types.hpp"

#include <cmath>

namespace gapmodes {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool is_dirac(const KickSpec& kick) {
    return std::holds_alternative<DiracKick>(kick);
}

bool is_none(const KickSpec& kick) {
    return std::holds_alternative<NoKick>(kick);
}

double kick_value(const KickSpec& kick, double t) {
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, NoKick>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, DiracKick>) {
                throw PreconditionError(
                    "kick_value: Dirac kick has no pointwise value; use jump matching");
            } else if constexpr (std::is_same_v<K, GaussianKick>) {
                const double w = k.width;
                return -k.strength * std::exp(-0.5 * t * t / (w * w)) /
                       (w * std::sqrt(2.0 * kPi));
            } else if constexpr (std::is_same_v<K, LorentzianKick>) {
                const double w = k.width;
                return -k.strength * (w / kPi) / (w * w + t * t);
            } else {
                const double s2 = k.shear * k.shear;
                const double q = 1.0 + s2 * t * t;
                return -s2 / (q * q);
            }
        },
        kick);
}

double kick_width_scale(const KickSpec& kick) {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, GaussianKick> ||
                          std::is_same_v<K, LorentzianKick>) {
                return k.width;
            } else if constexpr (std::is_same_v<K, TaeShearKick>) {
                return 1.0 / k.shear;
            } else {
                return 0.0;
            }
        },
        kick);
}

double integrated_strength(const KickSpec& kick) {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, NoKick>) {
                return 0.0;
            } else if constexpr (std::is_same_v<K, TaeShearKick>) {
                return 0.5 * kPi * k.shear;
            } else {
                return k.strength;
            }
        },
        kick);
}

std::string kick_name(const KickSpec& kick) {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, NoKick>) return "none";
            else if constexpr (std::is_same_v<K, DiracKick>) return "dirac";
            else if constexpr (std::is_same_v<K, GaussianKick>) return "gaussian";
            else if constexpr (std::is_same_v<K, LorentzianKick>) return "lorentzian";
            else return "tae-shear";
        },
        kick);
}

}  // namespace gapmodes
