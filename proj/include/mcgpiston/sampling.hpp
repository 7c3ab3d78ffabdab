#pragma once

#include <variant>
#include <vector>

#include "mcgpiston/limits.hpp"
#include "mcgpiston/rarefaction.hpp"
#include "mcgpiston/shock.hpp"
#include "mcgpiston/setup.hpp"

namespace mcg {

/// Closed-form receding fan of the vanishing-A gas, carried as a value type so
/// profiles can be sampled without re-deriving the bounds.
struct GcgFan {
    double eta_head;
    double eta_tail;
    double rho1;
};

/// A solved piston problem of any kind, with pointwise evaluation in the
/// similarity coordinate. Used by the validation oracle and the CLI.
struct PistonSolution {
    PistonProblem problem;
    std::variant<ShockSolution, RarefactionSolution, GcgFan, ChaplyginContact> wave;

    WaveKind kind() const {
        if (std::holds_alternative<ShockSolution>(wave)) return WaveKind::Shock;
        if (std::holds_alternative<RarefactionSolution>(wave)) return WaveKind::Rarefaction1;
        return WaveKind::MeasureLimit;
    }

    /// Leftmost wave speed; the upstream constant state fills xi below it.
    double leftmost_speed() const {
        if (const auto* s = std::get_if<ShockSolution>(&wave)) return s->sigma;
        if (const auto* r = std::get_if<RarefactionSolution>(&wave)) return r->eta_head;
        if (const auto* g = std::get_if<GcgFan>(&wave)) return g->eta_head;
        return std::get<ChaplyginContact>(wave).sigma;
    }

    FanState state_at(double xi) const {
        const double u0 = problem.upstream_velocity();
        const auto upstream = FanState{1.0, u0, pressure(problem.gas, 1.0)};
        if (const auto* s = std::get_if<ShockSolution>(&wave)) {
            if (xi < s->sigma) return upstream;
            return {s->rho1, 0.0, s->p1};
        }
        if (const auto* r = std::get_if<RarefactionSolution>(&wave)) {
            if (xi < r->eta_head) return upstream;
            if (xi > r->eta_tail) return {r->rho1, 0.0, pressure(problem.gas, r->rho1)};
            return r->sample(xi);
        }
        if (const auto* g = std::get_if<GcgFan>(&wave)) {
            if (xi < g->eta_head) return upstream;
            if (xi > g->eta_tail) return {g->rho1, 0.0, pressure(problem.gas, g->rho1)};
            FanPoint fp = gcg_fan_state_at(problem.gas.alpha, problem.m0, xi);
            return {fp.rho, fp.u, pressure(problem.gas, fp.rho)};
        }
        const auto& c = std::get<ChaplyginContact>(wave);
        if (xi < c.sigma) return upstream;
        return {c.rho1, 0.0, pressure(problem.gas, c.rho1)};
    }
};

/// Solves whichever wave the problem admits: shock for a proceeding piston,
/// first-family fan for a receding one, with the vanishing-A closed forms
/// taking over when A = 0.
inline PistonSolution solve_piston(const PistonProblem& p) {
    if (p.direction == Direction::Proceeding) {
        return {p, solve_shock(p)};
    }
    switch (p.gas.regime()) {
        case GasRegime::Mcg:
            return {p, solve_rarefaction(p)};
        case GasRegime::Gcg: {
            GcgFan fan{gcg_fan_head(p.m0), gcg_fan_tail(p.gas.alpha, p.m0), 0.0};
            fan.rho1 = gcg_fan_state_at(p.gas.alpha, p.m0, fan.eta_tail).rho;
            return {p, fan};
        }
        case GasRegime::Chaplygin:
            return {p, chaplygin_receding_density(p.m0)};
        case GasRegime::McgAlphaOne:
        default:
            throw std::domain_error("solve_piston: alpha = 1 with A > 0 is outside the solver's range");
    }
}

/// Samples the solution on n points spanning [1.2 * leftmost wave speed, 0],
/// strictly increasing in xi.
inline WaveProfile sample_profile(const PistonSolution& sol, int n) {
    if (n < 2) throw std::domain_error("sample_profile: need at least 2 samples");
    WaveProfile profile{sol.kind(), {}};
    profile.samples.reserve(static_cast<std::size_t>(n));
    const double xi_min = 1.2 * sol.leftmost_speed();
    for (int i = 0; i < n; ++i) {
        const double xi = xi_min + (0.0 - xi_min) * static_cast<double>(i) / (n - 1);
        FanState s = sol.state_at(xi);
        profile.samples.push_back({xi, s.rho, s.u, s.p});
    }
    return profile;
}

} // namespace mcg
