#include "holeburn/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Coherent spectral hole burning and qubit isolation in Lambda-system ensembles"};
    app.set_version_flag("--version", holeburn::version_stamp());
    app.require_subcommand(1);

    holeburn::CommandOptions options;
    double tolerance = 0.0;
    app.add_option("--workers", options.workers, "Worker threads for sweeps (0 = all cores)")->capture_default_str();
    auto* tol = app.add_option("--tolerance", tolerance, "Override the integrator convergence tolerance");

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run the sweep described by a JSON config");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();

    std::string figure;
    std::string out_dir = ".";
    auto* reproduce = app.add_subcommand("reproduce", "Write the data and a gnuplot script for one figure");
    reproduce->add_option("figure_id", figure, "Figure id")
        ->required()
        ->check(CLI::IsMember(holeburn::figure_ids()));
    reproduce->add_option("--out", out_dir, "Output directory")->capture_default_str();
    reproduce->add_flag("--quick", options.quick, "Use coarse grids");

    auto* analytic = app.add_subcommand("analytic", "Tabulate the analytic hole model on a config's grid");
    analytic->add_option("config", config_path, "Experiment config (JSON)")->required();

    // Global options may appear after the subcommand too.
    for (auto* sub : {run, reproduce, analytic}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : holeburn::kExitUsage;
    }
    if (tol->count() > 0) options.tolerance = tolerance;

    if (*run) return holeburn::cmd_run(config_path, options);
    if (*reproduce) return holeburn::cmd_reproduce(figure, out_dir, options);
    return holeburn::cmd_analytic(config_path, options);
}
