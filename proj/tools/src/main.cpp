#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "iddecli/run.hpp"

namespace {

void add_common(CLI::App* cmd, idde::cli::RunConfig& config) {
    cmd->add_option("--problem", config.problem_path, "Problem file path")
        ->required();
    cmd->add_option("--horizon", config.horizon, "Integration horizon")
        ->required();
    cmd->add_option("--step", config.step, "Integration base step");
    cmd->add_option("--depth", config.depth, "Breakpoint propagation depth");
    cmd->add_option("--qstep", config.qstep, "Quadrature step");
    cmd->add_option("--tol", config.tol, "Verification tolerance");
    cmd->add_option("--gridstep", config.grid_step,
                    "Grid step for the positivity functional");
    cmd->add_option("--out", config.out_path, "CSV output path");
    cmd->add_option("--seed", config.seed, "Random seed");
    cmd->add_option("--trials", config.trials, "Randomized trial count");
    cmd->add_option("--s", config.s, "Column start time");
    cmd->add_option("--grid", config.tgrid, "t grid as a:b:h");
    cmd->add_option("--sgrid", config.sgrid, "s grid as a:b:h");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Simulator for scalar linear impulsive delay differential equations: "
        "solutions, fundamental functions, representation and estimate "
        "checks"};
    app.require_subcommand(1);

    idde::cli::RunConfig config;

    add_common(app.add_subcommand("solve", "Integrate the problem"), config);
    add_common(app.add_subcommand(
                   "fundamental",
                   "Fundamental-function columns G(., s) (X for s = 0)"),
               config);
    add_common(app.add_subcommand(
                   "cauchy", "Non-impulsive fundamental columns C(., s)"),
               config);
    add_common(app.add_subcommand(
                   "expand",
                   "Impulse expansion of G from C: comparison table"),
               config);
    auto* verify = app.add_subcommand("verify", "Run a verification");
    verify
        ->add_option("target", config.variant,
                     "lemma1|theorem5|representation|positivity|estimate")
        ->required();
    add_common(verify, config);
    auto* probe = app.add_subcommand("probe", "Randomized input-class probe");
    probe->add_option("class", config.variant, "bounded|vanishing|exponential")
        ->required();
    add_common(probe, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    return idde::cli::run(config, std::cout, std::cerr);
}
