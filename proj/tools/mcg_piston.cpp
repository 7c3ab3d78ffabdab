// Command-line front end: solve, profile, sweep, validate, limit.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mcgpiston/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, mcg::cli::RunConfig& cfg, std::string& direction,
                        std::string& format) {
    cmd->add_option("--m0", cfg.m0, "Mach number of the piston (> 0)");
    cmd->add_option("--alpha", cfg.alpha, "pressure-law exponent in (0, 1]");
    cmd->add_option("--theta", cfg.theta, "fraction of 2/m0^2 assigned to the linear term, in [0, 1)");
    cmd->add_option("--direction", direction, "proceeding | receding");
    cmd->add_option("--format", format, "csv | json (defaults to the command's format)");
    cmd->add_option("--out", cfg.output_path, "output file (default: stdout)");
    cmd->add_option("--seed", cfg.seed, "seed recorded in reports");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact piston-problem solutions for the modified Chaplygin gas, with "
                 "finite-volume cross-validation"};
    app.require_subcommand(1);

    mcg::cli::RunConfig cfg;
    std::string direction = "proceeding";
    std::string format;
    std::string sweep_axis;

    auto* solve = app.add_subcommand("solve", "solve the piston problem and print a JSON summary");
    add_common_options(solve, cfg, direction, format);

    auto* profile = app.add_subcommand("profile", "sample the self-similar solution as CSV");
    add_common_options(profile, cfg, direction, format);
    profile->add_option("--samples", cfg.samples, "number of profile rows");

    auto* sweep = app.add_subcommand("sweep", "solve across a parameter range, one CSV row each");
    add_common_options(sweep, cfg, direction, format);
    sweep->add_option("--sweep", sweep_axis, "axis: theta | m0");
    sweep->add_option("--from", cfg.sweep_from, "first axis value");
    sweep->add_option("--to", cfg.sweep_to, "last axis value");
    sweep->add_option("--count", cfg.sweep_count, "number of axis values");
    sweep->add_flag("--log", cfg.sweep_log, "space axis values geometrically");

    auto* validate = app.add_subcommand("validate",
                                        "cross-check the exact solution against the finite-volume "
                                        "solver (or the weak form in the concentration regime)");
    add_common_options(validate, cfg, direction, format);
    validate->add_option("--grid-n", cfg.grid_n, "finest cell count of the comparison ladder");
    validate->add_option("--t-final", cfg.t_final, "comparison time");
    validate->add_option("--cfl", cfg.cfl, "CFL number in (0, 1]");
    validate->add_option("--golden", cfg.golden_path, "report file to compare against");

    auto* limit = app.add_subcommand("limit", "vanishing-A classification and measure weights");
    add_common_options(limit, cfg, direction, format);

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) cfg.command = mcg::cli::Command::Solve;
    if (profile->parsed()) cfg.command = mcg::cli::Command::Profile;
    if (sweep->parsed()) cfg.command = mcg::cli::Command::Sweep;
    if (validate->parsed()) cfg.command = mcg::cli::Command::Validate;
    if (limit->parsed()) cfg.command = mcg::cli::Command::Limit;

    if (direction == "proceeding") {
        cfg.direction = mcg::Direction::Proceeding;
    } else if (direction == "receding") {
        cfg.direction = mcg::Direction::Receding;
    } else {
        std::cerr << "usage error: unknown direction '" << direction << "'\n";
        return mcg::cli::exit_usage;
    }
    if (!format.empty()) {
        if (format == "csv") {
            cfg.format = mcg::cli::OutputFormat::Csv;
        } else if (format == "json") {
            cfg.format = mcg::cli::OutputFormat::Json;
        } else {
            std::cerr << "usage error: unknown format '" << format << "'\n";
            return mcg::cli::exit_usage;
        }
    }
    if (!sweep_axis.empty()) {
        if (sweep_axis == "theta") {
            cfg.sweep = mcg::cli::SweepAxis::Theta;
        } else if (sweep_axis == "m0") {
            cfg.sweep = mcg::cli::SweepAxis::M0;
        } else {
            std::cerr << "usage error: unknown sweep axis '" << sweep_axis << "'\n";
            return mcg::cli::exit_usage;
        }
    }

    return mcg::cli::run_command(cfg, std::cout, std::cerr);
}
