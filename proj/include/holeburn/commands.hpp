// commands.hpp — the run, reproduce and analytic subcommands.
//
// Each command returns a process exit status: 0 on success, 2 for invalid
// input (bad config, unknown figure), 1 for failures during computation or
// output.

#pragma once

#include "holeburn/analytics.hpp"
#include "holeburn/config.hpp"
#include "holeburn/figures.hpp"
#include "holeburn/output.hpp"
#include "holeburn/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace holeburn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandOptions {
    unsigned workers = 0;  // 0 = hardware concurrency
    std::optional<double> tolerance;
    bool quick = false;
};

namespace detail {

inline void apply_overrides(ExperimentConfig& config, const CommandOptions& options) {
    if (options.tolerance) {
        if (!(*options.tolerance > 0.0)) throw ConfigError("--tolerance", "must be > 0");
        config.integrator.tolerance = *options.tolerance;
    }
}

inline std::size_t count_unconverged(const SweepResult& r) {
    std::size_t n = 0;
    for (const auto& p : r.points) n += p.info.converged ? 0 : 1;
    return n;
}

inline SweepResult run_config(const ExperimentConfig& config, const CommandOptions& options) {
    return run_sweep(config.grid(), config.protocol, config.system, config.integrator, options.workers);
}

}  // namespace detail

/// Runs the sweep described by an already validated config and writes its outputs.
inline void run_experiment(const ExperimentConfig& config, const CommandOptions& options, const std::string& command,
                           std::ostream& log) {
    const SweepResult result = detail::run_config(config, options);
    const auto preamble = make_preamble(command, config);
    write_atomically(config.output.csv, sweep_table(result, preamble).csv());
    log << "wrote " << config.output.csv << " (" << result.points.size() << " points)\n";
    if (!config.output.json.empty()) {
        write_atomically(config.output.json, sweep_json(result, config).dump(2) + "\n");
        log << "wrote " << config.output.json << "\n";
    }
    if (!config.output.absorption.empty()) {
        const auto profile = absorption_profile(result, config.ensemble);
        write_atomically(config.output.absorption, absorption_table(profile, config.secondary, preamble).csv());
        log << "wrote " << config.output.absorption << "\n";
    }
    if (const auto n = detail::count_unconverged(result))
        log << "warning: " << n << " point(s) did not reach the convergence tolerance\n";
}

inline int cmd_run(const std::string& config_path, const CommandOptions& options, std::ostream& log = std::cout,
                   std::ostream& err = std::cerr) {
    ExperimentConfig config;
    try {
        config = load_config(config_path);
        detail::apply_overrides(config, options);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        run_experiment(config, options, "run " + config_path, log);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

namespace detail {

inline Table figure_table(const FigurePreset& fig, const CommandOptions& options, std::ostream& log) {
    Table table;
    table.preamble = {version_stamp(), "command: reproduce " + fig.id, "figure: " + fig.title};
    bool first = true;
    for (std::size_t k = 0; k < fig.runs.size(); ++k) {
        ExperimentConfig config = fig.runs[k].config;
        apply_overrides(config, options);
        const auto result = run_config(config, options);
        if (const auto n = count_unconverged(result))
            log << "warning: " << fig.id << " run " << k << ": " << n << " point(s) not converged\n";

        const std::string label = fig.runs.size() > 1 ? "config[" + std::to_string(k) + "]: " : "config: ";
        table.preamble.push_back(label + to_json(config).dump());

        Table part = sweep_table(result);
        if (first) {
            table.columns = part.columns;
            for (const auto& t : fig.runs[k].tags) table.columns.push_back(t.first);
            if (fig.scaled_delta) table.columns.push_back("delta_over_edge");
            first = false;
        }
        for (auto& row : part.rows) {
            for (const auto& t : fig.runs[k].tags) row.push_back(t.second);
            if (fig.scaled_delta) row.push_back(row[0] / fig.runs[k].delta_scale);
            table.add_row(std::move(row));
        }
    }
    table.preamble.push_back(kFrameNote);
    table.preamble.push_back(ensemble_note(fig.runs.front().config.ensemble));
    return table;
}

inline std::string gnuplot_file(const FigurePreset& fig, const std::string& csv_name) {
    std::string body = fig.gnuplot;
    for (std::size_t at = body.find("DATA"); at != std::string::npos; at = body.find("DATA", at + csv_name.size()))
        body.replace(at, 4, csv_name);
    return "# " + version_stamp() + "\n"
           "# usage: gnuplot -p " + fig.id + ".gp\n" +
           body;
}

}  // namespace detail

/// Runs the parameter set of one figure and writes <id>.csv and <id>.gp into `out_dir`.
inline int cmd_reproduce(const std::string& id, const std::string& out_dir, const CommandOptions& options,
                         std::ostream& log = std::cout, std::ostream& err = std::cerr) {
    FigurePreset fig;
    try {
        fig = figure_preset(id, options.quick);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (options.tolerance && !(*options.tolerance > 0.0)) throw ConfigError("--tolerance", "must be > 0");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        namespace fs = std::filesystem;
        const fs::path dir(out_dir);
        const std::string csv_name = fig.id + ".csv";
        const Table table = detail::figure_table(fig, options, log);
        write_atomically(dir / csv_name, table.csv());
        log << "wrote " << (dir / csv_name).string() << " (" << table.rows.size() << " rows)\n";

        if (fig.absorption) {
            // Absorption on a uniform line: g·P1 over the same grid.
            Table abs;
            abs.preamble = table.preamble;
            abs.columns = {"delta", "absorption"};
            const auto& ensemble = fig.runs.front().config.ensemble;
            for (const auto& row : table.rows) abs.add_row({row[0], ensemble.weight(row[0]) * std::max(0.0, row[1])});
            const std::string abs_name = fig.id + "_absorption.csv";
            write_atomically(dir / abs_name, abs.csv());
            log << "wrote " << (dir / abs_name).string() << "\n";
        }

        write_atomically(dir / (fig.id + ".gp"), detail::gnuplot_file(fig, csv_name));
        log << "wrote " << (dir / (fig.id + ".gp")).string() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

namespace detail {

/// Hole model for one value of the secondary axis, honouring the override.
inline AnalyticHoleModel model_for(const ExperimentConfig& c, SweepAxis axis, double value) {
    if (c.analytic.omega0) return AnalyticHoleModel{*c.analytic.omega0, *c.analytic.theta_dot};
    double omega = c.protocol.burn_omega;
    double tau = c.protocol.burn_tau;
    if (axis == SweepAxis::omega_max) omega = value;
    if (axis == SweepAxis::tau) tau = value;
    if (!(tau > 0.0)) throw std::domain_error("analytic model needs tau > 0");
    return AnalyticHoleModel::from_pulses(omega, tau);
}

inline std::string point_key(double delta, std::optional<double> secondary) {
    return format_number(delta) + "|" + (secondary ? format_number(*secondary) : "");
}

/// P3 by (delta, secondary) from an existing run output, if present.
inline std::map<std::string, double> numeric_lookup(const std::string& csv_path, SweepAxis axis) {
    std::map<std::string, double> out;
    if (csv_path.empty() || !std::filesystem::exists(csv_path)) return out;
    const Table t = read_table(read_file(csv_path));
    auto col = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            if (t.columns[i] == name) return i;
        return std::nullopt;
    };
    const auto d = col("delta");
    const auto p3 = col("P3");
    const auto s = axis == SweepAxis::none ? std::nullopt : col(axis_name(axis));
    if (!d || !p3 || (axis != SweepAxis::none && !s)) return out;
    for (const auto& row : t.rows)
        out[point_key(row[*d], s ? std::optional<double>(row[*s]) : std::nullopt)] = row[*p3];
    return out;
}

}  // namespace detail

/// Analytic hole profile, edge and adiabaticity margin on the config's grid,
/// alongside the numeric P3 from the config's run output when it exists.
inline Table analytic_table(const ExperimentConfig& config, std::vector<std::string>& warnings) {
    const SweepGrid grid = config.grid();
    const auto numeric = detail::numeric_lookup(config.output.csv, grid.secondary);

    Table t;
    t.preamble = make_preamble("analytic", config);
    t.columns = {"delta", "analytic_P3", "adiabaticity_margin", "numeric_P3"};
    if (grid.secondary != SweepAxis::none) t.columns.push_back(axis_name(grid.secondary));

    for (std::size_t s = 0; s < grid.secondary_count(); ++s) {
        std::optional<double> sec;
        if (grid.secondary != SweepAxis::none) sec = grid.secondary_values[s];
        const std::string where = sec ? " at " + axis_name(grid.secondary) + " = " + format_number(*sec) : "";

        const AnalyticHoleModel model = detail::model_for(config, grid.secondary, sec.value_or(0.0));
        double edge = std::nan("");
        try {
            edge = delta_edge(model);
            if (edge == 0.0) warnings.push_back("omega0 = 8 theta_dot" + where + ": hole edge is at the threshold (0)");
        } catch (const NoPlateauError& e) {
            warnings.push_back(std::string(e.what()) + where);
        }
        t.preamble.push_back("omega0" + where + ": " + format_number(model.omega0_eff) +
                             ", theta_dot: " + format_number(model.theta_dot_eff));
        t.preamble.push_back("delta_edge" + where + ": " + format_number(edge));
        t.preamble.push_back("edge_leading_term" + where + ": " + format_number(edge_leading_term(model)));

        for (double d : grid.delta_values) {
            const auto it = numeric.find(detail::point_key(d, sec));
            std::vector<double> row{d, analytic_p3(d, model), adiabaticity_margin(d, model),
                                    it == numeric.end() ? std::nan("") : it->second};
            if (sec) row.push_back(*sec);
            t.add_row(std::move(row));
        }
    }
    for (const auto& w : warnings) t.preamble.push_back("warning: " + w);
    return t;
}

inline int cmd_analytic(const std::string& config_path, const CommandOptions& options, std::ostream& log = std::cout,
                        std::ostream& err = std::cerr) {
    ExperimentConfig config;
    try {
        config = load_config(config_path);
        detail::apply_overrides(config, options);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        std::vector<std::string> warnings;
        const Table t = analytic_table(config, warnings);
        for (const auto& w : warnings) err << "warning: " << w << "\n";
        if (config.output.analytic.empty()) {
            log << t.csv();
        } else {
            write_atomically(config.output.analytic, t.csv());
            log << "wrote " << config.output.analytic << " (" << t.rows.size() << " rows)\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace holeburn
