#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mcg {

inline constexpr double sqrt2 = std::numbers::sqrt2;

/// Pressure-law regime. The wave solvers require the fully mixed law
/// (A > 0, alpha < 1); the vanishing-A regimes are served by the limit module.
enum class GasRegime {
    Mcg,         ///< A > 0, alpha < 1
    Gcg,         ///< A = 0, alpha < 1
    Chaplygin,   ///< A = 0, alpha = 1
    McgAlphaOne, ///< A > 0, alpha = 1: EOS is fine, wave structure is not guaranteed
};

/// Coefficients of the pressure law P(rho) = A*rho - B/rho^alpha in the
/// normalized piston frame (rho0 = 1, |piston speed| = sqrt(2)).
struct GasParams {
    double A;
    double B;
    double alpha;

    GasParams(double A_, double B_, double alpha_) : A(A_), B(B_), alpha(alpha_) {
        if (!(std::isfinite(A) && A >= 0.0))
            throw std::domain_error("GasParams: A must be finite and >= 0");
        if (!(std::isfinite(B) && B > 0.0))
            throw std::domain_error("GasParams: B must be finite and > 0");
        if (!(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0))
            throw std::domain_error("GasParams: alpha must lie in (0, 1]");
    }

    GasRegime regime() const {
        if (A > 0.0) return alpha < 1.0 ? GasRegime::Mcg : GasRegime::McgAlphaOne;
        return alpha < 1.0 ? GasRegime::Gcg : GasRegime::Chaplygin;
    }
};

/// Mach-number normalization: theta splits the fixed sum A + B*alpha = 2/M0^2
/// between the linear and inverse-power coefficients.
struct MachConstraint {
    double m0;
    double theta;
};

inline void check_density(double rho, const char* who) {
    if (!(std::isfinite(rho) && rho > 0.0))
        throw std::domain_error(std::string(who) + ": density must be finite and > 0");
}

inline double pressure(const GasParams& gas, double rho) {
    check_density(rho, "pressure");
    return gas.A * rho - gas.B * std::pow(rho, -gas.alpha);
}

/// c^2 = P'(rho) = A + B*alpha/rho^(alpha+1); positive for every rho > 0.
inline double sound_speed_sq(const GasParams& gas, double rho) {
    check_density(rho, "sound_speed");
    return gas.A + gas.B * gas.alpha * std::pow(rho, -(gas.alpha + 1.0));
}

inline double sound_speed(const GasParams& gas, double rho) {
    return std::sqrt(sound_speed_sq(gas, rho));
}

/// Builds gas coefficients realizing Mach number m0 at the normalized upstream
/// state: A = 2*theta/m0^2, B = 2*(1-theta)/(alpha*m0^2).
inline GasParams from_mach(double m0, double alpha, double theta) {
    if (!(std::isfinite(m0) && m0 > 0.0))
        throw std::domain_error("from_mach: m0 must be finite and > 0");
    if (!(std::isfinite(theta) && theta >= 0.0 && theta < 1.0))
        throw std::domain_error("from_mach: theta must lie in [0, 1)");
    if (!(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("from_mach: alpha must lie in (0, 1]");
    const double m0_sq = m0 * m0;
    return GasParams(2.0 * theta / m0_sq, 2.0 * (1.0 - theta) / (alpha * m0_sq), alpha);
}

inline GasParams from_mach(const MachConstraint& c, double alpha) {
    return from_mach(c.m0, alpha, c.theta);
}

/// Mach number of a piston moving at speed v0 into gas at the reference
/// density rho = 1.
inline double mach_of(const GasParams& gas, double v0) {
    return std::abs(v0) / sound_speed(gas, 1.0);
}

} // namespace mcg
