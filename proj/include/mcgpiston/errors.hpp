#pragma once

#include <stdexcept>
#include <string>

namespace mcg {

/// Raised when a bracketed iteration fails to converge. Carries the last
/// bracket so callers can log something actionable.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double lo, double hi, double f_lo, double f_hi)
        : std::runtime_error(what + " [bracket " + std::to_string(lo) + ", " + std::to_string(hi)
                             + "; f " + std::to_string(f_lo) + ", " + std::to_string(f_hi) + "]"),
          bracket_lo(lo), bracket_hi(hi), f_bracket_lo(f_lo), f_bracket_hi(f_hi) {}

    double bracket_lo;
    double bracket_hi;
    double f_bracket_lo;
    double f_bracket_hi;
};

/// Raised when no bounded shock exists: the vanishing-A pressure law caps the
/// attainable Mach number and mass piles onto the piston instead. Callers
/// should switch to the measure-solution path.
class concentration_regime_error : public std::runtime_error {
public:
    concentration_regime_error(double alpha_, double m0_, double mach_sq_limit_)
        : std::runtime_error("no bounded shock: M0^2 = " + std::to_string(m0_ * m0_)
                             + " >= attainable limit " + std::to_string(mach_sq_limit_)
                             + "; use the concentration measure solution"),
          alpha(alpha_), m0(m0_), mach_sq_limit(mach_sq_limit_) {}

    double alpha;
    double m0;
    double mach_sq_limit;
};

} // namespace mcg
