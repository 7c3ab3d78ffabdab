#include <doctest.h>

#include <cmath>

#include "mcgpiston/fvm.hpp"
#include "mcgpiston/limits.hpp"
#include "mcgpiston/shock.hpp"
#include "oracles.hpp"

using namespace mcg;

namespace {
// frozen from the pre-build bisection oracle: root of the limiting shock
// relation at alpha = 0.5, m0 = 1
constexpr double golden_gcg_rho1 = 6.1563251746586598;
} // namespace

TEST_CASE("limiting shock relation") {
    CHECK(std::abs(gcg_shock_mach_squared(0.5, 1.0 + 1e-9)) < 1e-8);
    CHECK(gcg_shock_mach_squared(0.5, 4.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(gcg_shock_mach_squared(0.5, 1e12) == doctest::Approx(2.0).epsilon(1e-5));
    CHECK_THROWS_AS(gcg_shock_mach_squared(0.5, 1.0), std::domain_error);

    double prev = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double rho = 1.0 * std::pow(1e8, k / 200.0) + 1e-9;
        const double v = gcg_shock_mach_squared(0.35, rho);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("limit classification") {
    CHECK(classify_limit(0.5, 1.0) == LimitRegime::IntegralShock);
    CHECK(classify_limit(0.5, std::sqrt(2.0)) == LimitRegime::Concentration); // boundary case
    CHECK(classify_limit(1.0, 2.0) == LimitRegime::Concentration);
    CHECK(classify_limit(1.0, 0.99) == LimitRegime::IntegralShock);
    CHECK_THROWS_AS(classify_limit(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(classify_limit(0.5, 0.0), std::domain_error);
}

TEST_CASE("limiting shock density solves the relation") {
    const double rho1 = gcg_shock_density(0.5, 1.0);
    CHECK(std::abs(rho1 - golden_gcg_rho1) <= 1e-11 * golden_gcg_rho1);
    CHECK(std::abs(gcg_shock_mach_squared(0.5, rho1) - 1.0) < 1e-12);
    CHECK_THROWS_AS(gcg_shock_density(0.5, 2.0), std::domain_error);
}

TEST_CASE("measure solution weights") {
    MeasureSolution ms = measure_solution(1.0, std::sqrt(2.0));
    CHECK(ms.w_p_const == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ms.w_rho(1.0) == doctest::Approx(sqrt2).epsilon(1e-15));
    CHECK(ms.w_rho(0.0) == 0.0);

    MeasureSolution boundary = measure_solution(0.5, std::sqrt(2.0));
    CHECK(std::abs(boundary.w_p_const) < 1e-14); // equality case of the positivity bound

    CHECK_THROWS_AS(measure_solution(0.5, 1.0), std::domain_error);

    oracle::Sampler rnd(501);
    for (int i = 0; i < 50; ++i) {
        const double alpha = rnd.uniform(0.05, 1.0);
        const double m0 = std::sqrt(1.0 / alpha) * rnd.uniform(1.0, 5.0) + 1e-9;
        MeasureSolution m = measure_solution(alpha, m0);
        CHECK(m.w_p_const >= -1e-15);
    }
}

TEST_CASE("weak form residual is small and converges at the quadrature order") {
    MeasureSolution ms = measure_solution(0.5, 2.0);
    const auto bank = default_test_bank();
    const double r32 = verify_weak_form(ms, bank, 32);
    const double r64 = verify_weak_form(ms, bank, 64);
    const double r256 = verify_weak_form(ms, bank, 256);
    CHECK(r256 < 1e-6);
    CHECK(std::log2(r32 / r64) >= 1.8);
}

TEST_CASE("weak form flags a wrong mass-weight slope") {
    MeasureSolution ms = measure_solution(1.0, std::sqrt(2.0));
    MeasureSolution bad = ms;
    bad.w_rho_slope = 1.5;
    CHECK(verify_weak_form(bad, default_test_bank(), 256) > 1e-2);
}

TEST_CASE("weak form is exactly zero off the domain") {
    MeasureSolution ms = measure_solution(1.0, std::sqrt(2.0));
    std::vector<BumpTestFunction> off = {{-2.0, 1.0, -1.0, 0.8, 1.0}, {1.0, 0.5, 2.0, 0.5, 1.0}};
    CHECK(verify_weak_form(ms, off, 64) == 0.0);
}

TEST_CASE("weak form validates its inputs") {
    MeasureSolution ms = measure_solution(1.0, std::sqrt(2.0));
    std::vector<BumpTestFunction> bad = {{0.0, -1.0, 0.0, 1.0, 1.0}};
    CHECK_THROWS_AS(verify_weak_form(ms, bad, 64), std::domain_error);
    CHECK_THROWS_AS(verify_weak_form(ms, default_test_bank(), 0), std::domain_error);
}

TEST_CASE("Chaplygin receding contact") {
    ChaplyginContact ch = chaplygin_receding_density(1.0);
    CHECK(ch.rho1 == 0.5);
    CHECK(ch.sigma == doctest::Approx(-2.0 * sqrt2).epsilon(1e-15));
    // continuity with the undisturbed state as the piston slows
    CHECK(std::abs(chaplygin_receding_density(1e-12).rho1 - 1.0) <= 2e-12);
    for (double m0 : {0.1, 0.3, 0.7, 1.5, 4.0}) {
        CHECK(chaplygin_receding_density(m0).rho1 == 1.0 / (1.0 + m0));
    }
}

TEST_CASE("vanishing-A fan closed form") {
    const double alpha = 0.5, m0 = 1.0;
    const double head = gcg_fan_head(m0);
    const double tail = gcg_fan_tail(alpha, m0);
    CHECK(head == doctest::Approx(-2.0 * sqrt2).epsilon(1e-15));
    CHECK(head < tail);
    CHECK(tail < 0.0);

    FanPoint at_head = gcg_fan_state_at(alpha, m0, head);
    CHECK(std::abs(at_head.rho - 1.0) <= 1e-12);
    CHECK(std::abs(at_head.u + sqrt2) <= 1e-12);

    FanPoint at_tail = gcg_fan_state_at(alpha, m0, tail);
    CHECK(std::abs(at_tail.u) <= 1e-12);

    double prev = 2.0;
    for (int k = 0; k <= 100; ++k) {
        FanPoint s = gcg_fan_state_at(alpha, m0, head + (tail - head) * k / 100.0);
        CHECK(s.rho < prev);
        prev = s.rho;
    }
    CHECK_THROWS_AS(gcg_fan_state_at(alpha, m0, head - 0.1), std::domain_error);
    CHECK_THROWS_AS(gcg_fan_state_at(alpha, m0, tail + 0.1), std::domain_error);
    CHECK_THROWS_AS(gcg_fan_state_at(1.0, m0, -2.0), std::domain_error);
}

TEST_CASE("full fan approaches the vanishing-A closed form") {
    const double alpha = 0.5, m0 = 1.0;
    PistonProblem p = make_problem(m0, Direction::Receding, alpha, 1e-10);
    RarefactionSolution sol = solve_rarefaction(p);
    const double head = gcg_fan_head(m0);
    const double tail = std::min(sol.eta_tail, gcg_fan_tail(alpha, m0));
    CHECK(std::abs(sol.eta_head - head) <= 1e-9);
    for (int k = 0; k <= 32; ++k) {
        const double eta = head + (tail - head) * k / 32.0;
        FanState mcg_state = sol.sample(eta);
        FanPoint gcg_state = gcg_fan_state_at(alpha, m0, eta);
        CHECK(std::abs(mcg_state.rho - gcg_state.rho) <= 1e-4);
        CHECK(std::abs(mcg_state.u - gcg_state.u) <= 1e-4);
    }
}

TEST_CASE("shock density converges to the limiting relation as theta vanishes") {
    const double alpha = 0.5, m0 = 1.0;
    auto relation = [&](double rho) { return gcg_shock_mach_squared(alpha, rho) - m0 * m0; };
    const double limit_rho = oracle::bisect(relation, 1.0 + 1e-13, 1e6);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double theta : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
        const double rho1 =
            solve_shock(make_problem(m0, Direction::Proceeding, alpha, theta)).rho1;
        const double gap = std::abs(rho1 - limit_rho);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-6);
}

TEST_CASE("above the threshold the shock density blows up as theta vanishes") {
    const double alpha = 0.5;
    const double m0 = std::sqrt(2.0);
    double prev = 0.0;
    for (double theta : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double rho1 =
            solve_shock(make_problem(m0, Direction::Proceeding, alpha, theta)).rho1;
        CHECK(rho1 > prev);
        prev = rho1;
    }
    CHECK(prev > 1e3);
}

TEST_CASE("near-wall mass grows at the impact rate in the concentration regime") {
    // small theta at the threshold Mach number: the shock is nearly glued to
    // the wall and the gas arrives at rate rho0 * u0 = sqrt(2)
    PistonProblem p = make_problem(std::sqrt(2.0), Direction::Proceeding, 0.5, 1e-4);
    auto grid = fvm::suggested_grid(p, 1.0, 1000);
    fvm::Solver solver = fvm::init(p, grid);
    solver.advance_to(0.5, 0.9);

    const double eps_width = 10.0 * grid.dx;
    auto excess_mass = [&]() {
        double m = 0.0;
        for (int i = 0; i < grid.n_cells; ++i) {
            if (grid.center(i) > -eps_width)
                m += (solver.state().rho[static_cast<std::size_t>(i)] - 1.0) * grid.dx;
        }
        return m;
    };

    std::vector<double> ts, ms;
    for (int k = 0; k <= 10; ++k) {
        solver.advance_to(0.5 + 0.05 * k, 0.9);
        ts.push_back(solver.time());
        ms.push_back(excess_mass());
    }
    // least-squares slope of m(t)
    double st = 0, sm = 0, stt = 0, stm = 0;
    const double n = static_cast<double>(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sm += ms[i];
        stt += ts[i] * ts[i];
        stm += ts[i] * ms[i];
    }
    const double slope = (n * stm - st * sm) / (n * stt - st * st);
    CHECK(std::abs(slope - sqrt2) <= 0.1 * sqrt2);
}
