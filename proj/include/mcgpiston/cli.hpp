#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcgpiston/fvm.hpp"
#include "mcgpiston/limits.hpp"
#include "mcgpiston/sampling.hpp"

namespace mcg {
namespace cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "mcg-piston/1";

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_domain = 3,
    exit_convergence = 4,
    exit_concentration = 5,
    exit_validation = 6,
};

enum class Command { Solve, Profile, Sweep, Validate, Limit };
enum class OutputFormat { Csv, Json };
enum class SweepAxis { None, Theta, M0 };

struct RunConfig {
    Command command = Command::Solve;
    double m0 = 0.0;
    double alpha = 0.5;
    double theta = 0.5;
    Direction direction = Direction::Proceeding;
    int samples = 512;
    int grid_n = 2000;
    double t_final = 0.5;
    double cfl = 0.9;
    std::optional<OutputFormat> format; ///< defaults to the command's natural format
    std::string output_path;            ///< empty: write to stdout
    long seed = 0;
    SweepAxis sweep = SweepAxis::None;
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    int sweep_count = 0;
    bool sweep_log = false;
    std::string golden_path; ///< validate only: report to compare against
};

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

inline const char* direction_name(Direction d) {
    return d == Direction::Proceeding ? "proceeding" : "receding";
}

/// Returns a one-line diagnostic if the configuration is unusable.
inline std::optional<std::string> validate_config(const RunConfig& c) {
    if (!(std::isfinite(c.m0) && c.m0 > 0.0)) return "m0 must be finite and > 0";
    if (!(std::isfinite(c.alpha) && c.alpha > 0.0 && c.alpha <= 1.0)) return "alpha must lie in (0, 1]";
    if (!(std::isfinite(c.theta) && c.theta >= 0.0 && c.theta < 1.0)) return "theta must lie in [0, 1)";
    if (c.alpha == 1.0 && c.theta != 0.0) return "alpha = 1 requires theta = 0";
    if (c.command == Command::Profile && c.samples < 2) return "samples must be >= 2";
    if (c.command == Command::Validate) {
        if (c.grid_n < 16) return "grid-n must be >= 16";
        if (!(std::isfinite(c.t_final) && c.t_final > 0.0)) return "t-final must be > 0";
        if (!(c.cfl > 0.0 && c.cfl <= 1.0)) return "cfl must lie in (0, 1]";
    }
    if (c.command == Command::Sweep) {
        if (c.sweep == SweepAxis::None) return "sweep requires an axis (--sweep theta|m0)";
        if (c.sweep_count < 1) return "sweep range is empty (--count must be >= 1)";
        if (!(std::isfinite(c.sweep_from) && std::isfinite(c.sweep_to))) return "sweep range must be finite";
        if (c.sweep_log && !(c.sweep_from > 0.0 && c.sweep_to > 0.0))
            return "log spacing requires a positive range";
        if (c.sweep == SweepAxis::Theta && !(c.sweep_from >= 0.0 && c.sweep_from < 1.0
                                             && c.sweep_to >= 0.0 && c.sweep_to < 1.0))
            return "theta sweep range must lie in [0, 1)";
        if (c.sweep == SweepAxis::M0 && !(c.sweep_from > 0.0 && c.sweep_to > 0.0))
            return "m0 sweep range must be positive";
    }
    if (c.format) {
        const bool wants_csv = c.command == Command::Profile || c.command == Command::Sweep;
        if (wants_csv && *c.format != OutputFormat::Csv) return "this command emits CSV only";
        if (!wants_csv && *c.format != OutputFormat::Json) return "this command emits JSON only";
    }
    return std::nullopt;
}

inline bool write_output(const RunConfig& c, const std::string& content, std::ostream& out,
                         std::ostream& err) {
    if (c.output_path.empty()) {
        out << content;
        return true;
    }
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) {
        err << "cannot open output file: " << c.output_path << "\n";
        return false;
    }
    f << content;
    return static_cast<bool>(f);
}

namespace detail {

inline ordered_json report_header(const RunConfig& c, const char* command) {
    ordered_json j;
    j["schema"] = schema_version;
    j["command"] = command;
    j["m0"] = c.m0;
    j["alpha"] = c.alpha;
    j["theta"] = c.theta;
    j["direction"] = direction_name(c.direction);
    j["seed"] = c.seed;
    return j;
}

inline void describe_wave(ordered_json& j, const PistonSolution& sol) {
    if (const auto* s = std::get_if<ShockSolution>(&sol.wave)) {
        j["kind"] = "shock";
        j["rho1"] = s->rho1;
        j["sigma"] = s->sigma;
        j["p1"] = s->p1;
        j["residual_mass"] = s->residual_mass;
        j["residual_momentum"] = s->residual_momentum;
        j["lax_ok"] = s->lax_ok;
    } else if (const auto* r = std::get_if<RarefactionSolution>(&sol.wave)) {
        j["kind"] = "rarefaction";
        j["rho1"] = r->rho1;
        j["eta_head"] = r->eta_head;
        j["eta_tail"] = r->eta_tail;
        j["invariant_const"] = r->invariant_const;
        j["u_tail"] = r->sample(r->eta_tail).u;
    } else if (const auto* g = std::get_if<GcgFan>(&sol.wave)) {
        j["kind"] = "rarefaction";
        j["model"] = "gcg_closed_form";
        j["rho1"] = g->rho1;
        j["eta_head"] = g->eta_head;
        j["eta_tail"] = g->eta_tail;
    } else {
        const auto& ch = std::get<ChaplyginContact>(sol.wave);
        j["kind"] = "contact";
        j["model"] = "chaplygin_contact";
        j["rho1"] = ch.rho1;
        j["sigma"] = ch.sigma;
    }
}

struct Check {
    std::string name;
    double value;
    double threshold;
    bool less_than; ///< pass when value < threshold (otherwise >=)
    bool pass() const { return less_than ? value < threshold : value >= threshold; }
};

inline ordered_json checks_json(const std::vector<Check>& checks) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json j;
        j["name"] = c.name;
        j["value"] = c.value;
        j["threshold"] = c.threshold;
        j["comparison"] = c.less_than ? "<" : ">=";
        j["pass"] = c.pass();
        arr.push_back(j);
    }
    return arr;
}

// least-squares slope of log2(err) against log2(n), negated
inline double convergence_order(const std::vector<int>& ns, const std::vector<double>& errs) {
    const std::size_t k = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = std::log2(static_cast<double>(ns[i]));
        const double y = std::log2(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    return -(k * sxy - sx * sy) / denom;
}

} // namespace detail

inline int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    PistonProblem problem = make_problem(c.m0, c.direction, c.alpha, c.theta);
    PistonSolution sol = solve_piston(problem);
    ordered_json j = detail::report_header(c, "solve");
    j["gas"] = {{"A", problem.gas.A}, {"B", problem.gas.B}, {"alpha", problem.gas.alpha}};
    detail::describe_wave(j, sol);
    return write_output(c, j.dump(2) + "\n", out, err) ? exit_ok : exit_usage;
}

inline int cmd_profile(const RunConfig& c, std::ostream& out, std::ostream& err) {
    PistonProblem problem = make_problem(c.m0, c.direction, c.alpha, c.theta);
    WaveProfile profile = sample_profile(solve_piston(problem), c.samples);
    std::string csv = "xi,rho,u,p\n";
    for (const auto& s : profile.samples) {
        csv += format_double(s.xi);
        csv += ',';
        csv += format_double(s.rho);
        csv += ',';
        csv += format_double(s.u);
        csv += ',';
        csv += format_double(s.p);
        csv += '\n';
    }
    return write_output(c, csv, out, err) ? exit_ok : exit_usage;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::string csv =
        "index,sweep,value,m0,alpha,theta,direction,status,kind,rho1,wave_speed,"
        "eta_head,eta_tail,resid_mass,resid_momentum,classification\n";
    const char* axis = c.sweep == SweepAxis::Theta ? "theta" : "m0";
    for (int i = 0; i < c.sweep_count; ++i) {
        const double frac = c.sweep_count == 1 ? 0.0 : static_cast<double>(i) / (c.sweep_count - 1);
        const double value = c.sweep_log
                                 ? c.sweep_from * std::pow(c.sweep_to / c.sweep_from, frac)
                                 : c.sweep_from + (c.sweep_to - c.sweep_from) * frac;
        double m0 = c.m0;
        double theta = c.theta;
        (c.sweep == SweepAxis::Theta ? theta : m0) = value;

        std::string status = "ok";
        std::string kind, rho1, wave_speed, eta_head, eta_tail, resid_mass, resid_momentum;
        try {
            PistonProblem problem = make_problem(m0, c.direction, c.alpha, theta);
            PistonSolution sol = solve_piston(problem);
            if (const auto* s = std::get_if<ShockSolution>(&sol.wave)) {
                kind = "shock";
                rho1 = format_double(s->rho1);
                wave_speed = format_double(s->sigma);
                resid_mass = format_double(s->residual_mass);
                resid_momentum = format_double(s->residual_momentum);
            } else if (const auto* r = std::get_if<RarefactionSolution>(&sol.wave)) {
                kind = "rarefaction";
                rho1 = format_double(r->rho1);
                eta_head = format_double(r->eta_head);
                eta_tail = format_double(r->eta_tail);
            } else if (const auto* g = std::get_if<GcgFan>(&sol.wave)) {
                kind = "rarefaction";
                rho1 = format_double(g->rho1);
                eta_head = format_double(g->eta_head);
                eta_tail = format_double(g->eta_tail);
            } else {
                const auto& ch = std::get<ChaplyginContact>(sol.wave);
                kind = "contact";
                rho1 = format_double(ch.rho1);
                wave_speed = format_double(ch.sigma);
            }
        } catch (const concentration_regime_error&) {
            status = "concentration_regime";
        } catch (const convergence_error&) {
            status = "convergence_error";
        } catch (const std::domain_error&) {
            status = "domain_error";
        }
        const char* classification =
            classify_limit(c.alpha, m0) == LimitRegime::IntegralShock ? "integral_shock"
                                                                      : "concentration";
        csv += std::to_string(i) + ',' + axis + ',' + format_double(value) + ','
               + format_double(m0) + ',' + format_double(c.alpha) + ',' + format_double(theta)
               + ',' + direction_name(c.direction) + ',' + status + ',' + kind + ',' + rho1 + ','
               + wave_speed + ',' + eta_head + ',' + eta_tail + ',' + resid_mass + ','
               + resid_momentum + ',' + classification + '\n';
    }
    return write_output(c, csv, out, err) ? exit_ok : exit_usage;
}

inline int cmd_limit(const RunConfig& c, std::ostream& out, std::ostream& err) {
    ordered_json j = detail::report_header(c, "limit");
    const LimitRegime regime = classify_limit(c.alpha, c.m0);
    j["classification"] = regime == LimitRegime::IntegralShock ? "integral_shock" : "concentration";
    j["threshold_m0"] = std::sqrt(1.0 / c.alpha);
    if (regime == LimitRegime::IntegralShock) {
        const double rho1 = gcg_shock_density(c.alpha, c.m0);
        j["gcg_rho1"] = rho1;
        j["gcg_sigma"] = -sqrt2 / (rho1 - 1.0);
    } else {
        const MeasureSolution ms = measure_solution(c.alpha, c.m0);
        j["w_rho_slope"] = ms.w_rho_slope;
        j["w_p_const"] = ms.w_p_const;
        j["ambient_pressure"] = ms.ambient_pressure();
    }
    if (c.alpha == 1.0) {
        const ChaplyginContact ch = chaplygin_receding_density(c.m0);
        j["receding"] = {{"kind", "chaplygin_contact"}, {"rho1", ch.rho1}, {"sigma", ch.sigma}};
    } else {
        GcgFan fan{gcg_fan_head(c.m0), gcg_fan_tail(c.alpha, c.m0), 0.0};
        fan.rho1 = gcg_fan_state_at(c.alpha, c.m0, fan.eta_tail).rho;
        j["receding"] = {{"kind", "gcg_fan"},
                         {"rho1", fan.rho1},
                         {"eta_head", fan.eta_head},
                         {"eta_tail", fan.eta_tail}};
    }
    return write_output(c, j.dump(2) + "\n", out, err) ? exit_ok : exit_usage;
}

namespace detail {

struct LadderResult {
    std::vector<int> ns;
    std::vector<double> l1_global;
    std::vector<double> l1_smooth;
    double shock_position_error = 0.0; ///< relative, proceeding only
};

inline LadderResult fvm_ladder(const PistonProblem& problem, const PistonSolution& exact,
                               const RunConfig& c) {
    LadderResult out;
    for (int divisor : {8, 4, 2, 1}) {
        const int n = std::max(64, c.grid_n / divisor);
        if (!out.ns.empty() && out.ns.back() == n) continue;
        out.ns.push_back(n);
    }

    double wave_bound = std::abs(exact.leftmost_speed());
    if (const auto* s = std::get_if<ShockSolution>(&exact.wave))
        wave_bound = std::max(wave_bound, sound_speed(problem.gas, s->rho1));
    const double x_min = -(1.5 * wave_bound * c.t_final + 0.4);

    // the solution is smooth away from the shock/contact and the fan-edge
    // kinks; the order gate is measured outside windows around those speeds
    std::vector<double> kink_speeds;
    if (const auto* s = std::get_if<ShockSolution>(&exact.wave)) {
        kink_speeds.push_back(s->sigma);
    } else if (const auto* r = std::get_if<RarefactionSolution>(&exact.wave)) {
        kink_speeds = {r->eta_head, r->eta_tail};
    } else if (const auto* g = std::get_if<GcgFan>(&exact.wave)) {
        kink_speeds = {g->eta_head, g->eta_tail};
    } else {
        kink_speeds.push_back(std::get<ChaplyginContact>(exact.wave).sigma);
    }
    const double window = 0.1 * std::abs(x_min); // half-width excluded around each kink

    for (std::size_t k = 0; k < out.ns.size(); ++k) {
        const auto grid = fvm::Grid1D::make(x_min, out.ns[k]);
        fvm::Solver solver = fvm::init(problem, grid);
        solver.advance_to(c.t_final, c.cfl);
        double l1 = 0.0;
        double l1_smooth = 0.0;
        for (int i = 0; i < grid.n_cells; ++i) {
            const double x = grid.center(i);
            const double diff =
                std::abs(solver.state().rho[static_cast<std::size_t>(i)]
                         - exact.state_at(x / c.t_final).rho);
            l1 += diff * grid.dx;
            bool smooth = true;
            for (double speed : kink_speeds)
                smooth = smooth && std::abs(x - speed * c.t_final) > window;
            if (smooth) l1_smooth += diff * grid.dx;
        }
        out.l1_global.push_back(l1);
        out.l1_smooth.push_back(l1_smooth);

        if (k + 1 == out.ns.size() && std::holds_alternative<ShockSolution>(exact.wave)) {
            const auto& s = std::get<ShockSolution>(exact.wave);
            const double mid = 0.5 * (1.0 + s.rho1);
            double x_shock = grid.center(grid.n_cells - 1);
            for (int i = 1; i < grid.n_cells; ++i) {
                const double r_prev = solver.state().rho[static_cast<std::size_t>(i - 1)];
                const double r_here = solver.state().rho[static_cast<std::size_t>(i)];
                if (r_prev < mid && r_here >= mid) {
                    const double frac = (mid - r_prev) / (r_here - r_prev);
                    x_shock = grid.center(i - 1) + frac * grid.dx;
                    break;
                }
            }
            out.shock_position_error = std::abs(x_shock - s.sigma * c.t_final)
                                       / std::abs(s.sigma * c.t_final);
        }
    }
    return out;
}

} // namespace detail

inline int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    ordered_json j = detail::report_header(c, "validate");
    std::vector<detail::Check> checks;

    const bool concentration_case = c.direction == Direction::Proceeding && c.theta == 0.0
                                    && classify_limit(c.alpha, c.m0) == LimitRegime::Concentration;
    if (concentration_case) {
        j["mode"] = "weak_form";
        const MeasureSolution ms = measure_solution(c.alpha, c.m0);
        const auto bank = default_test_bank();
        const std::vector<int> resolutions{32, 64, 128, 256};
        std::vector<double> residuals;
        for (int r : resolutions) residuals.push_back(verify_weak_form(ms, bank, r));
        ordered_json conv = ordered_json::array();
        for (std::size_t i = 0; i < resolutions.size(); ++i)
            conv.push_back({{"resolution", resolutions[i]}, {"residual", residuals[i]}});
        j["weak_form"] = conv;

        MeasureSolution perturbed = ms;
        perturbed.w_rho_slope = 1.5;
        const double detect = verify_weak_form(perturbed, bank, 256);

        checks.push_back({"weak_form_residual_256", residuals.back(), 1e-6, true});
        checks.push_back({"weak_form_order", std::log2(residuals[0] / residuals[1]), 1.8, false});
        checks.push_back({"weak_form_detects_bad_slope", detect, 1e-2, false});
    } else {
        j["mode"] = "fvm_cross_check";
        PistonProblem problem = make_problem(c.m0, c.direction, c.alpha, c.theta);
        PistonSolution exact = solve_piston(problem);
        detail::describe_wave(j, exact);
        detail::LadderResult ladder = detail::fvm_ladder(problem, exact, c);

        ordered_json lj = ordered_json::array();
        for (std::size_t i = 0; i < ladder.ns.size(); ++i)
            lj.push_back({{"n", ladder.ns[i]},
                          {"l1_density", ladder.l1_global[i]},
                          {"l1_density_smooth", ladder.l1_smooth[i]}});
        j["ladder"] = lj;

        const bool is_shock = std::holds_alternative<ShockSolution>(exact.wave);
        checks.push_back({"l1_density", ladder.l1_global.back(), 1e-2, true});
        checks.push_back(
            {"convergence_order", detail::convergence_order(ladder.ns, ladder.l1_smooth), 0.8, false});
        if (is_shock)
            checks.push_back({"shock_position_error", ladder.shock_position_error, 0.02, true});
    }

    bool pass = true;
    for (const auto& chk : checks) pass = pass && chk.pass();
    j["checks"] = detail::checks_json(checks);
    j["pass"] = pass;

    std::string failed_golden;
    if (!c.golden_path.empty()) {
        std::ifstream gf(c.golden_path);
        if (!gf) {
            err << "cannot open golden file: " << c.golden_path << "\n";
            return exit_usage;
        }
        ordered_json golden;
        try {
            gf >> golden;
        } catch (const std::exception& e) {
            err << "golden file is not valid JSON: " << e.what() << "\n";
            return exit_validation;
        }
        if (!golden.contains("checks") || !golden["checks"].is_array()
            || golden["checks"].size() != checks.size()) {
            failed_golden = "checks";
        } else {
            for (std::size_t i = 0; i < checks.size(); ++i) {
                const auto& g = golden["checks"][i];
                const double gv = g.value("value", std::numeric_limits<double>::quiet_NaN());
                const double cv = checks[i].value;
                if (!(std::abs(gv - cv) <= 1e-9 * std::max(1.0, std::abs(cv)))
                    || g.value("name", "") != checks[i].name) {
                    failed_golden = checks[i].name;
                    break;
                }
            }
        }
        j["golden_match"] = failed_golden.empty();
    }

    if (!write_output(c, j.dump(2) + "\n", out, err)) return exit_usage;
    if (!failed_golden.empty()) {
        err << "golden mismatch: " << failed_golden << "\n";
        return exit_validation;
    }
    if (!pass) {
        for (const auto& chk : checks)
            if (!chk.pass()) err << "check failed: " << chk.name << "\n";
        return exit_validation;
    }
    return exit_ok;
}

/// Dispatches a validated configuration and maps failures onto the documented
/// exit codes. All output goes to `out`/`err` unless the config names a file.
inline int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (auto diag = validate_config(c)) {
        err << "usage error: " << *diag << "\n";
        return exit_usage;
    }
    try {
        switch (c.command) {
            case Command::Solve: return cmd_solve(c, out, err);
            case Command::Profile: return cmd_profile(c, out, err);
            case Command::Sweep: return cmd_sweep(c, out, err);
            case Command::Validate: return cmd_validate(c, out, err);
            case Command::Limit: return cmd_limit(c, out, err);
        }
    } catch (const concentration_regime_error& e) {
        err << "concentration regime: " << e.what() << "\n";
        return exit_concentration;
    } catch (const convergence_error& e) {
        err << "convergence error: " << e.what() << "\n";
        return exit_convergence;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_usage;
}

} // namespace cli
} // namespace mcg
