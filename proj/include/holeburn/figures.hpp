// figures.hpp — hard-coded parameter sets for the published figures and the
// gnuplot scripts that plot their data.

#pragma once

#include "holeburn/analytics.hpp"
#include "holeburn/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace holeburn {

/// One sweep of a figure. Tags become extra constant columns in the output.
struct FigureRun {
    ExperimentConfig config;
    std::vector<std::pair<std::string, double>> tags;
    double delta_scale = 0.0;  // nonzero adds a delta / delta_scale column
};

struct FigurePreset {
    std::string id;
    std::string title;
    std::vector<FigureRun> runs;
    std::vector<std::string> tag_columns;
    bool scaled_delta = false;
    bool absorption = false;
    std::string gnuplot;  // script body; DATA stands for the CSV file name
};

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids{"fig2c", "fig3a", "fig3b", "fig3c", "fig4", "fig5b", "fig5c", "fig6b"};
    return ids;
}

namespace detail {

inline ExperimentConfig base_config(const std::string& id, double burn_omega) {
    ExperimentConfig c;
    c.protocol.burn_omega = burn_omega;
    c.output.csv = id + ".csv";
    return c;
}

inline DeltaAxis range_axis(double start, double stop, double step) { return DeltaAxis{DeltaRange{start, stop, step}, {}}; }

/// Sorted union of several evenly spaced ranges, with near-duplicates merged.
inline DeltaAxis union_axis(const std::vector<DeltaRange>& ranges) {
    std::vector<double> v;
    for (const auto& r : ranges) {
        auto part = linspace_step(r.start, r.stop, r.step);
        v.insert(v.end(), part.begin(), part.end());
    }
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > 1e-9) out.push_back(x);
    return DeltaAxis{std::nullopt, out};
}

inline std::string heatmap_script(const std::string& title, int x_col, int y_col, int z_col, const std::string& xlabel,
                                  const std::string& ylabel, const std::string& zlabel) {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set title '" + title + "'\n"
           "set xlabel '" + xlabel + "'\n"
           "set ylabel '" + ylabel + "'\n"
           "set cblabel '" + zlabel + "'\n"
           "set palette rgbformulae 33,13,10\n"
           "set cbrange [0:1]\n"
           "unset key\n"
           "plot 'DATA' using " + std::to_string(x_col) + ":" + std::to_string(y_col) + ":" + std::to_string(z_col) +
           " with points pointtype 5 pointsize 0.4 palette\n";
}

inline std::string family_script(const std::string& title, const std::string& values, int tag_col, int x_col,
                                 int y_col, const std::string& tag_label, const std::string& xlabel,
                                 const std::string& ylabel) {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set title '" + title + "'\n"
           "set xlabel '" + xlabel + "'\n"
           "set ylabel '" + ylabel + "'\n"
           "set yrange [-0.05:1.05]\n"
           "set key outside\n"
           "plot for [v in '" + values + "'] 'DATA' using " + std::to_string(x_col) + ":(abs($" +
           std::to_string(tag_col) + "-(v+0))<1e-9 ? $" + std::to_string(y_col) + " : 1/0) with lines title '" +
           tag_label +
           " = '.v\n";
}

}  // namespace detail

/// Parameter set of a figure. `quick` coarsens every grid for smoke runs.
inline FigurePreset figure_preset(const std::string& id, bool quick = false) {
    using detail::base_config;
    using detail::range_axis;
    FigurePreset f;
    f.id = id;

    if (id == "fig2c") {
        f.title = "P3 vs detuning and pulse delay, Omega_max = 10";
        auto c = base_config(id, 10.0);
        c.delta = quick ? range_axis(-50, 50, 5) : range_axis(-50, 50, 0.5);
        c.secondary = SweepAxis::tau;
        c.secondary_values = quick ? linspace_step(0, 4, 0.5) : linspace_step(0, 4, 0.1);
        f.runs.push_back({c, {}, 0.0});
        f.gnuplot = detail::heatmap_script(f.title, 1, 7, 4, "Delta [1/sigma]", "tau [sigma]", "P3");
    } else if (id == "fig3a") {
        f.title = "P3 vs detuning and Omega_max, tau = sqrt(2)";
        auto c = base_config(id, 10.0);
        c.delta = quick ? range_axis(-300, 300, 20) : range_axis(-300, 300, 2);
        c.secondary = SweepAxis::omega_max;
        c.secondary_values = quick ? linspace_step(5, 50, 15) : linspace_step(5, 50, 2.5);
        f.runs.push_back({c, {}, 0.0});
        f.gnuplot = detail::heatmap_script(f.title, 1, 7, 4, "Delta [1/sigma]", "Omega_max [1/sigma]", "P3");
        // Hole edge overlay, one point per Omega_max.
        f.gnuplot += "edge(w) = (2*exp(-0.25)*w**2)/(16*sqrt(2)/2) - 4*sqrt(2)/2\n"
                     "lead(w) = (2*exp(-0.25)*w**2)/(16*sqrt(2)/2)\n"
                     "set parametric\n"
                     "set trange [5:50]\n"
                     "replot edge(t),t with lines dashtype 4 lc 'blue' title 'Delta_edge', "
                     "-edge(t),t with lines dashtype 4 lc 'blue' notitle, "
                     "lead(t),t with lines lw 2 lc 'green' title 'Omega0^2/16 thetadot', "
                     "-lead(t),t with lines lw 2 lc 'green' notitle\n";
    } else if (id == "fig3b") {
        f.title = "Spectral hole profile for selected Omega_max";
        auto c = base_config(id, 10.0);
        c.delta = quick ? range_axis(-100, 100, 5) : range_axis(-100, 100, 0.5);
        c.secondary = SweepAxis::omega_max;
        c.secondary_values = {10.0, 15.0, 20.0};
        f.runs.push_back({c, {}, 0.0});
        f.gnuplot = detail::family_script(f.title, "10 15 20", 7, 1, 4, "Omega_max", "Delta [1/sigma]", "P3");
    } else if (id == "fig3c") {
        f.title = "P3 vs Delta/Delta_edge and Omega_max";
        f.tag_columns = {"omega_max"};
        f.scaled_delta = true;
        const auto omegas = quick ? std::vector<double>{10, 40, 70, 100} : linspace_step(10, 100, 10);
        const auto x = quick ? linspace_step(-2, 2, 0.1) : linspace_step(-2, 2, 0.01);
        for (double w : omegas) {
            auto c = base_config(id, w);
            const double edge = delta_edge(AnalyticHoleModel::from_pulses(w, kDefaultDelay));
            std::vector<double> d;
            for (double xi : x) d.push_back(xi * edge);
            c.delta = DeltaAxis{std::nullopt, d};
            f.runs.push_back({c, {{"omega_max", w}}, edge});
        }
        f.gnuplot = detail::heatmap_script(f.title, 8, 7, 4, "Delta / Delta_edge", "Omega_max [1/sigma]", "P3");
    } else if (id == "fig4") {
        f.title = "Hole profile with cross coupling, Omega_max = 20";
        f.tag_columns = {"omega13"};
        const auto delta = quick ? range_axis(-150, 150, 5) : range_axis(-150, 150, 0.5);
        auto ref = base_config(id, 20.0);
        ref.delta = delta;
        f.runs.push_back({ref, {{"omega13", 0.0}}, 0.0});
        for (double w13 : {50.0, 100.0, 400.0}) {
            auto c = base_config(id, 20.0);
            c.delta = delta;
            c.system.omega13 = w13;
            c.system.cross_coupling = true;
            f.runs.push_back({c, {{"omega13", w13}}, 0.0});
        }
        f.gnuplot = detail::family_script(f.title, "0 50 100 400", 7, 1, 4, "omega13 (0 = none)", "Delta [1/sigma]",
                                          "P3");
    } else if (id == "fig5b") {
        f.title = "P1 after burn (100) and unburn vs detuning and Omega_max^(r)";
        auto c = base_config(id, 100.0);
        c.protocol.unburn = {UnburnSpec{5.0, 0.0}};
        c.delta = quick ? range_axis(-20, 20, 2) : range_axis(-20, 20, 0.25);
        c.secondary = SweepAxis::omega_max_r;
        c.secondary_values = quick ? linspace_step(1, 10, 3) : linspace_step(1, 10, 0.5);
        f.runs.push_back({c, {}, 0.0});
        f.gnuplot = detail::heatmap_script(f.title, 1, 7, 2, "Delta [1/sigma]", "Omega_max^(r) [1/sigma]", "P1");
    } else if (id == "fig5c") {
        f.title = "Isolated peak inside the hole, with and without dephasing";
        auto c = base_config(id, 100.0);
        c.protocol.unburn = {UnburnSpec{5.0, 0.0}};
        c.delta = quick ? detail::union_axis({{-1500, 1500, 100}, {-10, 10, 1}})
                        : detail::union_axis({{-1500, 1500, 10}, {-10, 10, 0.1}});
        c.secondary = SweepAxis::dephasing;
        c.secondary_values = {0.0, 0.1};
        f.runs.push_back({c, {}, 0.0});
        f.gnuplot = detail::family_script(f.title, "0 0.1", 7, 1, 2, "Gamma", "Delta [1/sigma]", "P1");
    } else if (id == "fig6b") {
        f.title = "Five isolated qubits, Omega_max = 100, Omega_max^(r) = 5";
        f.absorption = true;
        auto c = base_config(id, 100.0);
        std::vector<DeltaRange> ranges{quick ? DeltaRange{-1500, 1500, 100} : DeltaRange{-1500, 1500, 10}};
        for (int n = -2; n <= 2; ++n) {
            const double offset = 500.0 * n;
            c.protocol.unburn.push_back(UnburnSpec{5.0, offset});
            ranges.push_back(quick ? DeltaRange{offset - 4, offset + 4, 1} : DeltaRange{offset - 5, offset + 5, 0.1});
        }
        c.delta = detail::union_axis(ranges);
        f.runs.push_back({c, {}, 0.0});
        f.gnuplot = "set datafile separator ','\n"
                    "set key autotitle columnhead\n"
                    "set title '" + f.title + "'\n"
                    "set xlabel 'Delta [1/sigma]'\n"
                    "set ylabel 'P1'\n"
                    "set yrange [-0.05:1.05]\n"
                    "set samples 2000\n"
                    "plot 'DATA' using 1:2 with lines title 'P1'\n";
    } else {
        std::string known;
        for (const auto& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
        throw std::invalid_argument("unknown figure id '" + id + "' (known: " + known + ")");
    }
    return f;
}

}  // namespace holeburn
