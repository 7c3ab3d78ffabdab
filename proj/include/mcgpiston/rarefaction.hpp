#pragma once

#include <cmath>
#include <limits>

#include "mcgpiston/eos.hpp"
#include "mcgpiston/roots.hpp"
#include "mcgpiston/setup.hpp"

namespace mcg {

/// Fan head speed, i.e. the slow characteristic of the upstream state:
/// sqrt(2)*(-1 - 1/m0).
inline double fan_head_speed(const PistonProblem& p) {
    return sqrt2 * (-1.0 - 1.0 / p.m0);
}

/// Slow-family characteristic of the upstream state for the second family
/// construction: sqrt(2)*(-1 + 1/m0).
inline double second_family_head_speed(const PistonProblem& p) {
    return sqrt2 * (-1.0 + 1.0 / p.m0);
}

/// Constant value of the first Riemann invariant across the receding fan,
/// evaluated at the upstream state (1, -sqrt(2)).
inline double riemann_invariant_const(const PistonProblem& p) {
    if (p.gas.A <= 0.0)
        throw std::domain_error("riemann_invariant_const: requires A > 0 (log form degenerates)");
    const double a1 = p.gas.alpha + 1.0;
    const double sa = std::sqrt(p.gas.A);
    const double m0 = p.m0;
    return -sqrt2 - 2.0 * sqrt2 / (a1 * m0)
           + (sa / a1) * std::log((2.0 * std::sqrt(2.0 * p.gas.A) * m0 + p.gas.A * m0 * m0 + 2.0) / (m0 * m0));
}

namespace detail {

// log of the positive constant in the fan-tail equation
inline double fan_tail_log_const(const PistonProblem& p) {
    const double sa = std::sqrt(p.gas.A);
    return (-sqrt2 * (p.gas.alpha + 1.0) - 2.0 * sqrt2 / p.m0) / sa
           + 2.0 * std::log(sqrt2 + sa * p.m0)
           - std::log(p.gas.alpha * p.gas.B * p.m0 * p.m0);
}

// log of the positive constant in the second-family tail equation
inline double second_family_log_const(const PistonProblem& p) {
    const double sa = std::sqrt(p.gas.A);
    const double m0 = p.m0;
    return (sqrt2 * (p.gas.alpha + 1.0) - 2.0 * sqrt2 / m0) / sa
           + std::log(2.0 * std::sqrt(2.0 * p.gas.A) * m0 + p.gas.A * m0 * m0 + 2.0)
           - std::log(p.gas.alpha * p.gas.B * m0 * m0);
}

} // namespace detail

/// Fan-tail equation in the scaled (overflow-safe) form. Strictly decreasing
/// in Q on (-inf, -1); its unique root Q0 gives the tail speed sqrt(A)*Q0.
inline double fan_tail_equation(const PistonProblem& p, double q) {
    if (p.gas.A <= 0.0) throw std::domain_error("fan_tail_equation: requires A > 0");
    if (q == -1.0) throw std::domain_error("fan_tail_equation: pole at Q = -1");
    const double ln_c = detail::fan_tail_log_const(p);
    return std::exp(ln_c - 2.0 * q) - 1.0 + 2.0 / (q + 1.0);
}

/// Second-family tail equation, scaled like fan_tail_equation. Strictly
/// increasing in Q away from the pole at Q = 1.
inline double second_family_equation(const PistonProblem& p, double q) {
    if (p.gas.A <= 0.0) throw std::domain_error("second_family_equation: requires A > 0");
    if (q == 1.0) throw std::domain_error("second_family_equation: pole at Q = 1");
    const double ln_c1 = detail::second_family_log_const(p);
    const double arg = ln_c1 + 2.0 * q;
    const double e = arg < 700.0 ? std::exp(arg) : std::numeric_limits<double>::infinity();
    return e - 1.0 - 2.0 / (q - 1.0);
}

/// Tail speed of the receding fan: the similarity coordinate where the gas
/// velocity reaches the wall value u = 0.
inline double solve_fan_tail(const PistonProblem& p) {
    if (p.direction != Direction::Receding)
        throw std::domain_error("solve_fan_tail: problem direction must be Receding");
    if (p.gas.regime() != GasRegime::Mcg)
        throw std::domain_error("solve_fan_tail: requires the mixed regime (A > 0, alpha < 1)");

    const double sa = std::sqrt(p.gas.A);
    const double ln_c = detail::fan_tail_log_const(p);
    // root equation in log form, monotone decreasing on Q < -1
    auto f = [&](double q) { return -2.0 * q - std::log1p(-2.0 / (q + 1.0)) + ln_c; };
    auto df = [&](double q) { return -2.0 - 2.0 / (q * q - 1.0); };

    double lo = fan_head_speed(p) / sa;
    for (int k = 0; k < 64 && f(lo) <= 0.0; ++k) lo *= 2.0; // analytically f(lo) > 0 already
    double delta = 1e-9;
    double hi = -1.0 - delta;
    for (int k = 0; k < 64 && f(hi) >= 0.0; ++k) {
        delta *= 0.1;
        hi = -1.0 - delta;
    }
    if (!(lo < hi))
        throw convergence_error("solve_fan_tail: degenerate bracket", lo, hi, f(lo), f(hi));
    RootResult root = find_root(f, df, lo, hi);
    return sa * root.x;
}

struct FanPoint {
    double rho;
    double u;
};

/// State inside the fan at similarity coordinate eta, from the characteristic
/// relation and the conserved invariant w0. Solves for the local sound speed,
/// then density and velocity follow in closed form.
inline FanPoint fan_state_at(const PistonProblem& p, double w0, double eta) {
    if (p.gas.A <= 0.0) throw std::domain_error("fan_state_at: requires A > 0");
    const double alpha = p.gas.alpha;
    const double a1 = alpha + 1.0;
    const double sa = std::sqrt(p.gas.A);
    const double n_head = std::sqrt(p.gas.A + p.gas.B * alpha); // upstream sound speed
    const double eta_head = -sqrt2 - n_head;
    if (eta < eta_head - 1e-9 * (1.0 + std::abs(eta_head)))
        throw std::domain_error("fan_state_at: eta ahead of the fan head");
    if (eta < eta_head) eta = eta_head;

    const double rhs = w0 - eta - sa * std::log(p.gas.B * alpha) / a1;
    auto residual = [&](double n) {
        return ((alpha - 1.0) * n + sa * std::log1p(2.0 * sa / (n - sa))) / a1 - rhs;
    };
    auto slope = [&](double n) { return ((alpha - 1.0) - 2.0 * p.gas.A / (n * n - p.gas.A)) / a1; };

    const double lo = n_head * (1.0 - 1e-9);
    const double hi = expand_until([&](double n) { return residual(n) < 0.0; },
                                   2.0 * n_head + 1.0, 2.0);
    RootResult root = find_root(residual, slope, lo, hi);

    const double n = root.x;
    FanPoint out;
    out.rho = std::pow(p.gas.B * alpha / (n * n - p.gas.A), 1.0 / a1);
    out.u = eta + n;
    if (out.u > 1e-8 * (1.0 + std::abs(eta)))
        throw std::domain_error("fan_state_at: eta beyond the fan tail (u > 0)");
    return out;
}

/// Closed-form density slope d(rho)/d(eta) along the fan, with n = u - eta the
/// local sound speed.
inline double fan_density_slope(const PistonProblem& p, double rho, double u, double eta) {
    const double n = u - eta;
    return -2.0 * n * rho / ((p.gas.alpha + 1.0) * p.gas.A + (1.0 - p.gas.alpha) * n * n);
}

struct FanState {
    double rho;
    double u;
    double p;
};

/// Receding-piston fan: head/tail speeds, terminal density and a pointwise
/// sampler. Immutable; sampling is a pure function and thread-safe.
struct RarefactionSolution {
    PistonProblem problem;
    double invariant_const;
    double eta_head;
    double eta_tail;
    double rho1;

    FanState sample(double eta) const {
        const double tol = 1e-9 * (1.0 + std::abs(eta_head));
        if (eta < eta_head - tol || eta > eta_tail + tol)
            throw std::domain_error("RarefactionSolution::sample: eta outside the fan");
        eta = std::min(std::max(eta, eta_head), eta_tail);
        FanPoint fp = fan_state_at(problem, invariant_const, eta);
        return {fp.rho, fp.u, pressure(problem.gas, fp.rho)};
    }
};

inline RarefactionSolution solve_rarefaction(const PistonProblem& p) {
    if (p.direction != Direction::Receding)
        throw std::domain_error("solve_rarefaction: problem direction must be Receding");
    if (p.gas.regime() != GasRegime::Mcg)
        throw std::domain_error("solve_rarefaction: requires the mixed regime (A > 0, alpha < 1)");

    RarefactionSolution sol{p, riemann_invariant_const(p), fan_head_speed(p), 0.0, 0.0};
    sol.eta_tail = solve_fan_tail(p);
    sol.rho1 = fan_state_at(p, sol.invariant_const, sol.eta_tail).rho;
    if (!(sol.rho1 > 0.0 && sol.rho1 < 1.0))
        throw convergence_error("solve_rarefaction: terminal density outside (0, 1)",
                                sol.eta_head, sol.eta_tail, sol.rho1, 0.0);
    return sol;
}

enum class ExclusionBranch {
    HeadAboveTail,    ///< densities would have to increase across the fan
    OrderingViolated, ///< head characteristic would sit behind the tail
    Degenerate,       ///< discriminant numerically zero; no branch asserted
};

/// Numerical witness that the second-family fan cannot close the receding
/// problem: exactly one ordering contradiction fires, selected by the sign of
/// the discriminant sqrt(2)/m0 - sqrt(2) - sqrt(A).
struct SecondFamilyCertificate {
    ExclusionBranch branch;
    double g_head;       ///< scaled second-family equation at the fan head
    double discriminant; ///< sign witness for the predicted branch
};

inline SecondFamilyCertificate second_family_certificate(const PistonProblem& p) {
    if (p.direction != Direction::Receding)
        throw std::domain_error("second_family_certificate: direction must be Receding");
    if (p.gas.regime() != GasRegime::Mcg)
        throw std::domain_error("second_family_certificate: requires A > 0, alpha < 1");

    const double sa = std::sqrt(p.gas.A);
    const double disc = sqrt2 / p.m0 - sqrt2 - sa;
    const double scale = sqrt2 / p.m0 + sqrt2 + sa;
    if (std::abs(disc) <= 1e-12 * scale) return {ExclusionBranch::Degenerate, 0.0, disc};

    const double q_head = second_family_head_speed(p) / sa;
    const double g = second_family_equation(p, q_head);
    if (g == 0.0) return {ExclusionBranch::Degenerate, g, disc};
    return {g < 0.0 ? ExclusionBranch::HeadAboveTail : ExclusionBranch::OrderingViolated, g, disc};
}

} // namespace mcg
