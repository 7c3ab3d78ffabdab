#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "mcgpiston/eos.hpp"
#include "mcgpiston/rarefaction.hpp"
#include "mcgpiston/roots.hpp"

namespace mcg {

enum class LimitRegime {
    IntegralShock, ///< bounded shock survives the A -> 0 limit
    Concentration, ///< mass piles onto the piston; Dirac weights required
};

inline LimitRegime classify_limit(double alpha, double m0) {
    if (!(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("classify_limit: alpha must lie in (0, 1]");
    if (!(std::isfinite(m0) && m0 > 0.0))
        throw std::domain_error("classify_limit: m0 must be finite and > 0");
    return m0 * m0 < 1.0 / alpha ? LimitRegime::IntegralShock : LimitRegime::Concentration;
}

/// Squared Mach number a downstream density rho1 requires in the vanishing-A
/// pressure law: (1/alpha)(1 - 1/rho1)(1 - rho1^-alpha). Increasing in rho1
/// with supremum 1/alpha.
inline double gcg_shock_mach_squared(double alpha, double rho1) {
    if (!(std::isfinite(rho1) && rho1 > 1.0))
        throw std::domain_error("gcg_shock_mach_squared: rho1 must be > 1");
    return (1.0 / alpha) * (1.0 - 1.0 / rho1) * (1.0 - std::pow(rho1, -alpha));
}

/// Downstream density of the limiting shock; defined only below the
/// concentration threshold.
inline double gcg_shock_density(double alpha, double m0) {
    if (classify_limit(alpha, m0) != LimitRegime::IntegralShock)
        throw std::domain_error("gcg_shock_density: no bounded shock at or above the threshold");
    const double target = m0 * m0;
    auto f = [&](double rho) { return gcg_shock_mach_squared(alpha, rho) - target; };
    const double hi = expand_until([&](double rho) { return f(rho) > 0.0; }, 2.0, 2.0);
    return find_root(f, 1.0 + 1e-13, hi).x;
}

/// Dirac weights of the concentration solution: mass on the wall grows like
/// w_rho(t) = slope * t and the wall pressure weight is constant.
struct MeasureSolution {
    double w_rho_slope; ///< sqrt(2) for the exact solution
    double w_p_const;   ///< 2 - 2/(alpha*m0^2), >= 0
    double m0;
    double alpha;

    double w_rho(double t) const { return w_rho_slope * t; }
    double ambient_pressure() const { return -2.0 / (alpha * m0 * m0); }
};

inline MeasureSolution measure_solution(double alpha, double m0) {
    if (classify_limit(alpha, m0) != LimitRegime::Concentration)
        throw std::domain_error("measure_solution: below the concentration threshold");
    return {sqrt2, 2.0 - 2.0 / (alpha * m0 * m0), m0, alpha};
}

/// C^1 test function with compact support: tensor product of polynomial bumps
/// amplitude * (1 - s^2)^3 in each variable, derivatives in closed form.
struct BumpTestFunction {
    double t_center;
    double t_halfwidth;
    double x_center;
    double x_halfwidth;
    double amplitude = 1.0;

    static double bump(double s) {
        if (std::abs(s) >= 1.0) return 0.0;
        const double w = 1.0 - s * s;
        return w * w * w;
    }
    static double bump_slope(double s) {
        if (std::abs(s) >= 1.0) return 0.0;
        const double w = 1.0 - s * s;
        return -6.0 * s * w * w;
    }

    double value(double t, double x) const {
        return amplitude * bump((t - t_center) / t_halfwidth) * bump((x - x_center) / x_halfwidth);
    }
    double dt(double t, double x) const {
        return amplitude * bump_slope((t - t_center) / t_halfwidth) / t_halfwidth
               * bump((x - x_center) / x_halfwidth);
    }
    double dx(double t, double x) const {
        return amplitude * bump((t - t_center) / t_halfwidth)
               * bump_slope((x - x_center) / x_halfwidth) / x_halfwidth;
    }
};

/// Bumps with varied supports: the first two straddle both boundary lines so
/// the Dirac terms are exercised; the rest probe interior and one-sided cases.
inline std::vector<BumpTestFunction> default_test_bank() {
    return {
        {0.0, 1.0, 0.0, 1.0, 1.0},
        {0.5, 1.0, -0.5, 1.0, 0.8},
        {1.2, 0.8, -1.0, 0.6, 1.2},
        {0.3, 0.5, 0.2, 0.5, 1.0},
        {0.0, 2.0, -0.6, 0.9, 0.5},
    };
}

namespace detail {

// composite two-point Gauss rule with `panels` panels on [a, b]
template <typename F>
double integrate(F&& f, double a, double b, int panels) {
    if (!(b > a)) return 0.0;
    const double h = (b - a) / panels;
    const double offset = 0.5 / std::numbers::sqrt3;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double mid = a + (i + 0.5) * h;
        sum += f(mid - offset * h) + f(mid + offset * h);
    }
    return 0.5 * h * sum;
}

} // namespace detail

/// Largest absolute residual of the two weak-form identities over a bank of
/// test functions, integrated with a composite tensor-product Gauss rule of
/// `resolution` panels per axis plus matching line rules on t = 0 and x = 0.
inline double verify_weak_form(const MeasureSolution& ms,
                               std::span<const BumpTestFunction> bank,
                               int resolution) {
    if (resolution < 1) throw std::domain_error("verify_weak_form: resolution must be >= 1");
    const double u_amb = sqrt2;                   // constant-state velocity
    const double p_amb = ms.ambient_pressure();   // constant-state pressure
    const double mom_flux_amb = u_amb * u_amb;    // rho * u^2 with rho = 1

    double worst = 0.0;
    for (const auto& phi : bank) {
        if (!(std::isfinite(phi.t_halfwidth) && phi.t_halfwidth > 0.0
              && std::isfinite(phi.x_halfwidth) && phi.x_halfwidth > 0.0
              && std::isfinite(phi.amplitude) && std::isfinite(phi.t_center)
              && std::isfinite(phi.x_center)))
            throw std::domain_error("verify_weak_form: malformed test function");

        const double t0 = std::max(0.0, phi.t_center - phi.t_halfwidth);
        const double t1 = phi.t_center + phi.t_halfwidth;
        const double x0 = phi.x_center - phi.x_halfwidth;
        const double x1 = std::min(0.0, phi.x_center + phi.x_halfwidth);
        if (!(t1 > t0) || !(x1 > x0)) continue; // support misses the domain: residual 0

        // the integrand is a tensor product, so both 2-D integrals factor
        auto b_t = [&](double t) { return BumpTestFunction::bump((t - phi.t_center) / phi.t_halfwidth); };
        auto db_t = [&](double t) {
            return BumpTestFunction::bump_slope((t - phi.t_center) / phi.t_halfwidth) / phi.t_halfwidth;
        };
        auto b_x = [&](double x) { return BumpTestFunction::bump((x - phi.x_center) / phi.x_halfwidth); };
        auto db_x = [&](double x) {
            return BumpTestFunction::bump_slope((x - phi.x_center) / phi.x_halfwidth) / phi.x_halfwidth;
        };

        const double int_bt = detail::integrate(b_t, t0, t1, resolution);
        const double int_dbt = detail::integrate(db_t, t0, t1, resolution);
        const double int_bx = detail::integrate(b_x, x0, x1, resolution);
        const double int_dbx = detail::integrate(db_x, x0, x1, resolution);
        const double amp = phi.amplitude;

        const double area_dt = amp * int_dbt * int_bx; // integral of d(phi)/dt over the domain
        const double area_dx = amp * int_bt * int_dbx; // integral of d(phi)/dx over the domain
        const double wall_t = amp * b_x(0.0);          // phi restricted to x = 0, t-dependence in b_t
        const double init_x = amp * b_t(0.0) * int_bx; // integral of phi(0, x) over x < 0

        // Dirac line terms on x = 0
        const double line_w_rho = wall_t * detail::integrate(
            [&](double t) { return ms.w_rho(t) * db_t(t); }, t0, t1, resolution);
        const double line_w_p = wall_t * ms.w_p_const * int_bt;

        const double mass_residual = area_dt + line_w_rho + u_amb * area_dx + init_x;
        const double momentum_residual = u_amb * area_dt + (mom_flux_amb + p_amb) * area_dx
                                         - line_w_p + u_amb * init_x;
        worst = std::max(worst, std::max(std::abs(mass_residual), std::abs(momentum_residual)));
    }
    return worst;
}

inline double verify_weak_form(const MeasureSolution& ms,
                               const std::vector<BumpTestFunction>& bank, int resolution) {
    return verify_weak_form(ms, std::span<const BumpTestFunction>(bank), resolution);
}

/// Receding Chaplygin limit (alpha = 1, A = 0): the fan collapses to a contact
/// at sigma with downstream density 1/(1 + m0).
struct ChaplyginContact {
    double rho1;
    double sigma;
};

inline ChaplyginContact chaplygin_receding_density(double m0) {
    if (!(std::isfinite(m0) && m0 > 0.0))
        throw std::domain_error("chaplygin_receding_density: m0 must be finite and > 0");
    const double rho1 = 1.0 / (1.0 + m0);
    return {rho1, sqrt2 / (rho1 - 1.0)};
}

inline double gcg_fan_head(double m0) { return -sqrt2 - sqrt2 / m0; }

inline double gcg_fan_tail(double alpha, double m0) {
    return -(sqrt2 / m0 + 0.5 * (alpha + 1.0) * sqrt2);
}

/// Closed-form receding fan of the vanishing-A gas with B = 2/(alpha*m0^2).
inline FanPoint gcg_fan_state_at(double alpha, double m0, double eta) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("gcg_fan_state_at: alpha must lie in (0, 1)");
    if (!(std::isfinite(m0) && m0 > 0.0))
        throw std::domain_error("gcg_fan_state_at: m0 must be finite and > 0");
    const double c0 = sqrt2 / m0;
    const double u0 = -sqrt2;
    const double head = gcg_fan_head(m0);
    const double tail = gcg_fan_tail(alpha, m0);
    const double tol = 1e-9 * (1.0 + std::abs(head));
    if (eta < head - tol || eta > tail + tol)
        throw std::domain_error("gcg_fan_state_at: eta outside the fan");
    eta = std::min(std::max(eta, head), tail);

    const double c = ((alpha + 1.0) * (u0 - eta) - 2.0 * c0) / (alpha - 1.0);
    FanPoint out;
    out.rho = std::pow(c0 / c, 2.0 / (alpha + 1.0));
    out.u = eta + c;
    return out;
}

} // namespace mcg
