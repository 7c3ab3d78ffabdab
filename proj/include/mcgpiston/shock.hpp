#pragma once

#include <cmath>
#include <utility>

#include "mcgpiston/eos.hpp"
#include "mcgpiston/roots.hpp"
#include "mcgpiston/setup.hpp"

namespace mcg {

inline double lambda1(const GasParams& gas, double rho, double u) {
    return u - sound_speed(gas, rho);
}

inline double lambda2(const GasParams& gas, double rho, double u) {
    return u + sound_speed(gas, rho);
}

/// Shock solution of the proceeding piston: constant state (rho1, 0) behind a
/// left-running shock at speed sigma, with the upstream state (1, sqrt(2)).
struct ShockSolution {
    double rho1;              ///< downstream density, > 1
    double sigma;             ///< shock speed, < 0
    double p1;                ///< downstream pressure from the EOS
    double residual_mass;     ///< mass jump-condition residual
    double residual_momentum; ///< momentum jump-condition residual
    bool lax_ok;              ///< entropy admissibility of the 1-shock
    int iterations;
};

/// Squared Mach number a downstream density rho would require. Monotone
/// increasing on (1, inf); the shock density is the unique preimage of m0^2.
inline double shock_mach_squared(const PistonProblem& p, double rho) {
    if (!(std::isfinite(rho) && rho > 1.0))
        throw std::domain_error("shock_mach_squared: rho must be > 1");
    const double m0_sq = p.m0 * p.m0;
    const double a_m2 = p.gas.A * m0_sq;
    const double b_m2 = p.gas.B * m0_sq;
    return (a_m2 * (rho - 1.0) - b_m2 * (std::pow(rho, -p.gas.alpha) - 1.0)) * (rho - 1.0) / (2.0 * rho);
}

inline double shock_mach_squared_slope(const PistonProblem& p, double rho) {
    if (!(std::isfinite(rho) && rho > 1.0))
        throw std::domain_error("shock_mach_squared_slope: rho must be > 1");
    const double m0_sq = p.m0 * p.m0;
    const double a_m2 = p.gas.A * m0_sq;
    const double b_m2 = p.gas.B * m0_sq;
    const double alpha = p.gas.alpha;
    const double r2 = 1.0 / (rho * rho);
    const double ra1 = std::pow(rho, -(alpha + 1.0));
    const double ra2 = std::pow(rho, -(alpha + 2.0));
    return 0.5 * (a_m2 * (1.0 - r2) + alpha * b_m2 * (ra1 - ra2) + b_m2 * (r2 - ra2));
}

/// Jump-condition residuals of the candidate (rho1, sigma) pair, with the
/// downstream pressure taken from the EOS: (mass, momentum).
inline std::pair<double, double> rankine_hugoniot_residual(const PistonProblem& p,
                                                           double rho1, double sigma) {
    check_density(rho1, "rankine_hugoniot_residual");
    const double u0 = sqrt2; // proceeding upstream velocity
    const double p0 = initial_pressure(p);
    const double p1 = pressure(p.gas, rho1);
    const double mass = sigma * (rho1 - 1.0) - (0.0 - u0);
    const double momentum = sigma * (0.0 - u0) - (p1 - u0 * u0 - p0);
    return {mass, momentum};
}

/// Largest squared Mach number a vanishing-A gas can absorb into a bounded
/// shock; beyond it mass concentrates on the piston.
inline double gcg_mach_sq_limit(const PistonProblem& p) {
    return 0.5 * p.gas.B * p.m0 * p.m0;
}

inline ShockSolution solve_shock(const PistonProblem& p) {
    if (p.direction != Direction::Proceeding)
        throw std::domain_error("solve_shock: problem direction must be Proceeding");
    if (p.gas.regime() == GasRegime::McgAlphaOne)
        throw std::domain_error("solve_shock: alpha = 1 with A > 0 is outside the solver's range");
    const double m0_sq = p.m0 * p.m0;
    if (p.gas.A == 0.0) {
        const double limit = gcg_mach_sq_limit(p);
        if (m0_sq >= limit) throw concentration_regime_error(p.gas.alpha, p.m0, limit);
    }

    auto f = [&](double rho) { return shock_mach_squared(p, rho) - m0_sq; };
    auto df = [&](double rho) { return shock_mach_squared_slope(p, rho); };

    const double lo = 1.0 + 1e-12;
    const double hi = expand_until([&](double rho) { return f(rho) > 0.0; }, 2.0, 2.0);
    RootResult root = find_root(f, df, lo, hi);

    ShockSolution sol{};
    sol.rho1 = root.x;
    sol.iterations = root.iterations;
    sol.sigma = -sqrt2 / (sol.rho1 - 1.0);
    sol.p1 = pressure(p.gas, sol.rho1);
    auto [rm, rmom] = rankine_hugoniot_residual(p, sol.rho1, sol.sigma);
    sol.residual_mass = rm;
    sol.residual_momentum = rmom;

    // 1-shock admissibility; equality is tolerated for the linearly
    // degenerate Chaplygin limit where the shock becomes a contact.
    const double l1_up = lambda1(p.gas, 1.0, sqrt2);
    const double l1_down = lambda1(p.gas, sol.rho1, 0.0);
    const double l2_down = lambda2(p.gas, sol.rho1, 0.0);
    const double tol = 1e-10 * (1.0 + std::abs(sol.sigma));
    sol.lax_ok = (l1_down <= sol.sigma + tol) && (sol.sigma <= l1_up + tol) && (sol.sigma <= l2_down + tol);
    return sol;
}

} // namespace mcg
