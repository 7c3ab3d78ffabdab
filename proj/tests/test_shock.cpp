#include <doctest.h>

#include <cmath>

#include "mcgpiston/shock.hpp"
#include "oracles.hpp"

using namespace mcg;

namespace {

// frozen from the pre-build bisection oracle (alpha = 0.5, theta = 0.5, m0 = 1)
constexpr double golden_rho1 = 3.0928625429485406;
constexpr double golden_sigma = -0.67573169921645826;
constexpr double golden_p1 = 1.955628933557332;

PistonProblem reference_problem() {
    return make_problem(1.0, Direction::Proceeding, 0.5, 0.5);
}

// bisection oracle for the shock density, independent of the library solver
double oracle_rho1(const PistonProblem& p) {
    const double m0_sq = p.m0 * p.m0;
    auto f = [&](double rho) {
        const double a_m2 = p.gas.A * m0_sq;
        const double b_m2 = p.gas.B * m0_sq;
        return (a_m2 * (rho - 1.0) - b_m2 * (std::pow(rho, -p.gas.alpha) - 1.0)) * (rho - 1.0)
                   / (2.0 * rho)
               - m0_sq;
    };
    double hi = 2.0;
    while (f(hi) < 0.0) hi *= 2.0;
    return oracle::bisect(f, 1.0 + 1e-13, hi);
}

} // namespace

TEST_CASE("shock balance function vanishes at the upstream density") {
    PistonProblem p = reference_problem();
    CHECK(std::abs(shock_mach_squared(p, 1.0 + 1e-12)) < 1e-11);
    CHECK_THROWS_AS(shock_mach_squared(p, 1.0), std::domain_error);
    CHECK_THROWS_AS(shock_mach_squared(p, 0.5), std::domain_error);
}

TEST_CASE("shock balance reduces to ((rho-1)/rho)^2 in the Chaplygin limit") {
    PistonProblem p = make_problem(0.5, Direction::Proceeding, 1.0, 0.0);
    for (double rho : {1.5, 2.0, 3.0, 10.0, 100.0}) {
        const double expected = (rho - 1.0) * (rho - 1.0) / (rho * rho);
        CHECK(std::abs(shock_mach_squared(p, rho) - expected) <= 1e-12 * expected);
    }
}

TEST_CASE("shock balance slope matches finite differences") {
    oracle::Sampler rnd(301);
    for (int i = 0; i < 30; ++i) {
        PistonProblem p = make_problem(rnd.log_uniform(0.05, 20.0), Direction::Proceeding,
                                       rnd.uniform(0.05, 0.95), rnd.uniform(0.01, 0.99));
        const double rho = rnd.log_uniform(1.01, 100.0);
        const double h = 1e-6 * rho;
        const double fd =
            oracle::central_diff([&](double r) { return shock_mach_squared(p, r); }, rho, h);
        const double slope = shock_mach_squared_slope(p, rho);
        CHECK(std::abs(fd - slope) <= 1e-6 * std::max(1.0, std::abs(slope)));
    }
}

TEST_CASE("shock balance is strictly increasing") {
    oracle::Sampler rnd(302);
    for (int trial = 0; trial < 10; ++trial) {
        PistonProblem p = make_problem(rnd.log_uniform(0.05, 20.0), Direction::Proceeding,
                                       rnd.uniform(0.05, 0.95), rnd.uniform(0.01, 0.99));
        double prev = shock_mach_squared(p, 1.0 + 1e-9);
        for (int k = 1; k <= 1000; ++k) {
            const double rho = (1.0 + 1e-9) * std::pow(1e6, k / 1000.0);
            const double fk = shock_mach_squared(p, rho);
            CHECK(fk > prev);
            prev = fk;
        }
    }
}

TEST_CASE("Chaplygin closed form: rho1 = 1/(1 - m0)") {
    PistonProblem p = make_problem(0.5, Direction::Proceeding, 1.0, 0.0);
    ShockSolution sol = solve_shock(p);
    CHECK(std::abs(sol.rho1 - 2.0) <= 1e-12);
    CHECK(std::abs(sol.sigma + sqrt2) <= 1e-12);
    auto [rm, rmom] = rankine_hugoniot_residual(p, 2.0, -sqrt2);
    CHECK(std::abs(rm) <= 1e-14);
    CHECK(std::abs(rmom) <= 1e-14);
}

TEST_CASE("reference shock matches the frozen oracle values") {
    PistonProblem p = reference_problem();
    ShockSolution sol = solve_shock(p);
    CHECK(std::abs(sol.rho1 - golden_rho1) <= 1e-11 * golden_rho1);
    CHECK(std::abs(sol.sigma - golden_sigma) <= 1e-11 * std::abs(golden_sigma));
    CHECK(std::abs(sol.p1 - golden_p1) <= 1e-11 * std::abs(golden_p1));
    CHECK(std::abs(sol.residual_mass) < 1e-10);
    CHECK(std::abs(sol.residual_momentum) < 1e-10);
    CHECK(sol.lax_ok);
    // and against a fresh bisection run
    CHECK(std::abs(sol.rho1 - oracle_rho1(p)) <= 1e-10);
}

TEST_CASE("jump-condition residual detects a perturbed density") {
    PistonProblem p = reference_problem();
    ShockSolution sol = solve_shock(p);
    auto [rm, rmom] = rankine_hugoniot_residual(p, sol.rho1 + 1e-3, sol.sigma);
    (void)rm;
    CHECK(std::abs(rmom) > 1e-6);
}

TEST_CASE("solve_shock is deterministic in the gas parameters") {
    PistonProblem p = reference_problem();
    ShockSolution a = solve_shock(p);
    ShockSolution b = solve_shock(p);
    CHECK(a.rho1 == b.rho1);
    ShockSolution c = solve_shock(make_problem(1.0, Direction::Proceeding, 0.5, 0.25));
    CHECK(c.rho1 != a.rho1);
}

TEST_CASE("random shocks satisfy the jump and admissibility conditions") {
    oracle::Sampler rnd(303);
    for (int i = 0; i < 50; ++i) {
        PistonProblem p = make_problem(rnd.log_uniform(0.05, 20.0), Direction::Proceeding,
                                       rnd.uniform(0.05, 0.95), rnd.uniform(0.01, 0.99));
        ShockSolution sol = solve_shock(p);
        CHECK(sol.rho1 > 1.0);
        CHECK(sol.sigma < 0.0);
        CHECK(std::abs(sol.residual_mass) < 1e-10);
        CHECK(std::abs(sol.residual_momentum) < 1e-10);
        CHECK(std::abs(sol.sigma + sqrt2 / (sol.rho1 - 1.0)) <= 1e-12 * std::abs(sol.sigma));
        CHECK(sol.lax_ok);
        // strict inequalities away from the degenerate limit
        CHECK(lambda1(p.gas, sol.rho1, 0.0) < sol.sigma);
        CHECK(sol.sigma < lambda1(p.gas, 1.0, sqrt2));
        CHECK(sol.sigma < lambda2(p.gas, sol.rho1, 0.0));
        // the bisection oracle lands on the same root
        CHECK(std::abs(sol.rho1 - oracle_rho1(p)) <= 1e-9 * sol.rho1);
    }
}

TEST_CASE("vanishing-A shocks approach the limiting relation") {
    // limiting relation solved by the test's own bisection
    const double alpha = 0.5;
    auto limit_relation = [&](double rho) {
        return (1.0 / alpha) * (1.0 - 1.0 / rho) * (1.0 - std::pow(rho, -alpha)) - 1.0;
    };
    const double limit_rho = oracle::bisect(limit_relation, 1.0 + 1e-13, 1e6);
    PistonProblem p = make_problem(1.0, Direction::Proceeding, alpha, 1e-10);
    CHECK(std::abs(solve_shock(p).rho1 - limit_rho) < 1e-6);
}

TEST_CASE("solve_shock rejects what it cannot solve") {
    CHECK_THROWS_AS(solve_shock(make_problem(1.0, Direction::Receding, 0.5, 0.5)),
                    std::domain_error);
    // alpha = 1 with A > 0 is not covered by the wave solvers
    PistonProblem degenerate{1.0, Direction::Proceeding, GasParams(0.5, 1.5, 1.0)};
    CHECK_THROWS_AS(solve_shock(degenerate), std::domain_error);
    // at or above the vanishing-A threshold the shock family runs out
    CHECK_THROWS_AS(solve_shock(make_problem(std::sqrt(2.0), Direction::Proceeding, 0.5, 0.0)),
                    concentration_regime_error);
    CHECK_THROWS_AS(solve_shock(make_problem(2.0, Direction::Proceeding, 0.5, 0.0)),
                    concentration_regime_error);
    // just below the threshold it still exists
    CHECK(solve_shock(make_problem(1.4, Direction::Proceeding, 0.5, 0.0)).rho1 > 1.0);
}
