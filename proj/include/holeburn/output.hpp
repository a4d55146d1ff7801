// output.hpp — CSV and JSON writers for sweep results.
//
// CSV files carry a '#'-prefixed preamble (version stamp, command, the full
// config as one line of JSON, modelling notes) followed by a header row and
// one row per grid point. Numbers use 12 significant digits and files are
// written to a temporary sibling first, then renamed into place.

#pragma once

#include "holeburn/config.hpp"
#include "holeburn/sweep.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#ifndef HOLEBURN_VERSION
#define HOLEBURN_VERSION "0.0.0"
#endif
#ifndef HOLEBURN_GIT_REVISION
#define HOLEBURN_GIT_REVISION "unknown"
#endif

namespace holeburn {

inline constexpr int kCsvDigits = 12;

inline std::string version_stamp() {
    return std::string("holeburn ") + HOLEBURN_VERSION + " (git " + HOLEBURN_GIT_REVISION + ")";
}

/// Locale-independent shortest form with at most 12 significant digits.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kCsvDigits);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

/// Parses a number written by format_number.
inline double parse_number(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

struct Table {
    std::vector<std::string> preamble;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
        rows.push_back(std::move(row));
    }

    std::string body() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
        out += '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                out += format_number(r[i]);
            }
            out += '\n';
        }
        return out;
    }

    std::string csv() const {
        std::string out;
        for (const auto& line : preamble) out += "# " + line + '\n';
        return out + body();
    }
};

inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline constexpr const char* kFrameNote =
    "frames: each segment runs in its own carrier frame; free evolution between segments is not propagated";

inline std::string ensemble_note(const EnsembleDistribution& e) {
    if (e.shape == LineShape::gaussian)
        return "ensemble: gaussian line shape, center " + format_number(e.center) + ", rms width " +
               format_number(e.width) + " (modelling choice)";
    if (e.width == 0.0) return "ensemble: uniform line shape over all detunings (modelling choice)";
    return "ensemble: uniform line shape, center " + format_number(e.center) + ", full width " +
           format_number(e.width) + " (modelling choice)";
}

/// Standard preamble: version, command, config echo and notes.
inline std::vector<std::string> make_preamble(const std::string& command, const ExperimentConfig& config) {
    return {version_stamp(), "command: " + command, "config: " + to_json(config).dump(), kFrameNote,
            ensemble_note(config.ensemble)};
}

/// Extracts the config echoed in a CSV preamble.
inline ExperimentConfig config_from_preamble(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    const std::string key = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind(key, 0) == 0) return parse_config_text(line.substr(key.size()));
        if (line.empty() || line[0] != '#') break;
    }
    throw std::runtime_error("no config line in the CSV preamble");
}

inline Table sweep_table(const SweepResult& r, std::vector<std::string> preamble = {}) {
    Table t;
    t.preamble = std::move(preamble);
    t.columns = {"delta", "P1", "P2", "P3", "max_P2", "converged"};
    const bool secondary = r.grid.secondary != SweepAxis::none;
    if (secondary) t.columns.push_back(axis_name(r.grid.secondary));
    for (const auto& p : r.points) {
        std::vector<double> row{p.delta,         p.populations[0], p.populations[1], p.populations[2],
                                p.max_excited,   p.info.converged ? 1.0 : 0.0};
        if (secondary) row.push_back(*p.secondary);
        t.add_row(std::move(row));
    }
    return t;
}

inline Table absorption_table(const std::vector<AbsorptionSample>& samples, SweepAxis axis,
                              std::vector<std::string> preamble = {}) {
    Table t;
    t.preamble = std::move(preamble);
    t.columns = {"delta", "absorption"};
    if (axis != SweepAxis::none) t.columns.push_back(axis_name(axis));
    for (const auto& s : samples) {
        std::vector<double> row{s.delta, s.absorption};
        if (axis != SweepAxis::none) row.push_back(*s.secondary);
        t.add_row(std::move(row));
    }
    return t;
}

inline nlohmann::ordered_json sweep_json(const SweepResult& r, const ExperimentConfig& config) {
    using oj = nlohmann::ordered_json;
    oj points = oj::array();
    for (const auto& p : r.points) {
        oj row{{"delta", p.delta},
               {"P1", p.populations[0]},
               {"P2", p.populations[1]},
               {"P3", p.populations[2]},
               {"max_P2", p.max_excited},
               {"converged", p.info.converged},
               {"residual", p.info.residual},
               {"refinements", p.info.refinements},
               {"steps", p.info.steps}};
        if (p.secondary) row[axis_name(r.grid.secondary)] = *p.secondary;
        points.push_back(std::move(row));
    }
    return oj{{"version", HOLEBURN_VERSION},
              {"git", HOLEBURN_GIT_REVISION},
              {"config", to_json(config)},
              {"notes", {kFrameNote, ensemble_note(config.ensemble)}},
              {"points", points}};
}

/// Reads the data rows of a CSV written by Table::csv.
inline Table read_table(const std::string& csv) {
    Table t;
    std::istringstream in(csv);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!header) t.preamble.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header) {
            t.columns = cells;
            header = true;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_number(c));
        t.add_row(std::move(row));
    }
    if (!header) throw std::runtime_error("CSV has no header row");
    return t;
}

}  // namespace holeburn
