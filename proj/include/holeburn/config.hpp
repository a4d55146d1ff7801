// config.hpp — JSON experiment configuration.
//
// Layout (see schemas/experiment_config.schema.json):
//
//   {
//     "protocol":   {"burn": {"omega_max", "tau"}, "unburn": [{"omega_max", "offset"}],
//                    "unburn_tau", "segment_gap"},
//     "system":     {"omega13", "gamma21", "gamma23", "Gamma", "cross_coupling"},
//     "grid":       {"delta": {"start", "stop", "step"} | {"values": [...]},
//                    "secondary": {"axis", "values"}},
//     "integrator": {"base_step", "tolerance", "max_refinements"},
//     "ensemble":   {"shape", "center", "width"},
//     "analytic":   {"omega0", "theta_dot"},
//     "output":     {"csv", "json", "absorption", "analytic"}
//   }
//
// Unknown keys are rejected. Errors carry the JSON path of the offending field.

#pragma once

#include "holeburn/sweep.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace holeburn {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct DeltaRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    bool operator==(const DeltaRange&) const = default;
};

/// Detuning axis given either as a range or as explicit values.
struct DeltaAxis {
    std::optional<DeltaRange> range;
    std::vector<double> values;

    std::vector<double> expand() const { return range ? linspace_step(range->start, range->stop, range->step) : values; }

    bool operator==(const DeltaAxis&) const = default;
};

struct OutputConfig {
    std::string csv;
    std::string json;
    std::string absorption;
    std::string analytic;

    bool operator==(const OutputConfig&) const = default;
};

/// Direct (Ω0, θ̇) input for the analytic model, bypassing the pulse mapping.
struct AnalyticOverride {
    std::optional<double> omega0;
    std::optional<double> theta_dot;

    bool operator==(const AnalyticOverride&) const = default;
};

struct ExperimentConfig {
    ProtocolSpec protocol;
    SystemParams system;
    DeltaAxis delta;
    SweepAxis secondary = SweepAxis::none;
    std::vector<double> secondary_values;
    IntegratorConfig integrator;
    EnsembleDistribution ensemble;
    AnalyticOverride analytic;
    OutputConfig output;

    bool operator==(const ExperimentConfig&) const = default;

    SweepGrid grid() const { return SweepGrid{delta.expand(), secondary, secondary_values}; }
};

namespace detail {

using nlohmann::json;

/// Typed accessor over one JSON object that tracks which keys were read.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_, "expected an object");
    }

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        if (!has(key)) {
            if (fallback) return *fallback;
            throw ConfigError(child(key), "required number is missing");
        }
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(child(key), "expected a number");
        return v.get<double>();
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw ConfigError(child(key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(child(key), "expected a string");
        return v.get<std::string>();
    }

    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(child(key), "expected an integer");
        return v.get<int>();
    }

    std::vector<double> numbers(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(child(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(child(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    /// Throws on any key that was never read.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.contains(it.key())) throw ConfigError(child(it.key()), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline void check(bool ok, const std::string& path, const std::string& message) {
    if (!ok) throw ConfigError(path, message);
}

inline void parse_protocol(ObjectReader& root, ExperimentConfig& c) {
    if (!root.has("protocol")) throw ConfigError("protocol", "required block is missing");
    ObjectReader r(root.raw("protocol"), "protocol");
    if (!r.has("burn")) throw ConfigError("protocol.burn", "required block is missing");
    {
        ObjectReader b(r.raw("burn"), "protocol.burn");
        c.protocol.burn_omega = b.number("omega_max");
        c.protocol.burn_tau = b.number("tau", kDefaultDelay);
        b.finish();
        check(c.protocol.burn_omega > 0.0, "protocol.burn.omega_max", "must be > 0");
        check(c.protocol.burn_tau > 0.0, "protocol.burn.tau", "must be > 0 (STIRAP ordering)");
    }
    c.protocol.unburn.clear();
    if (r.has("unburn")) {
        const auto& arr = r.raw("unburn");
        if (!arr.is_array()) throw ConfigError("protocol.unburn", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "protocol.unburn[" + std::to_string(i) + "]";
            ObjectReader u(arr[i], path);
            UnburnSpec spec;
            spec.omega_max = u.number("omega_max");
            spec.carrier_offset = u.number("offset", 0.0);
            u.finish();
            check(spec.omega_max > 0.0, path + ".omega_max", "must be > 0");
            check(spec.omega_max < c.protocol.burn_omega, path + ".omega_max",
                  "must be below the burn omega_max (" + std::to_string(c.protocol.burn_omega) + ")");
            c.protocol.unburn.push_back(spec);
        }
    }
    c.protocol.unburn_tau = r.number("unburn_tau", -kDefaultDelay);
    c.protocol.segment_gap = r.number("segment_gap", kDefaultSegmentGap);
    r.finish();
    check(c.protocol.unburn_tau < 0.0, "protocol.unburn_tau", "must be < 0 (reversed ordering)");
    check(c.protocol.segment_gap >= kMinSegmentGap, "protocol.segment_gap",
          "must be >= " + std::to_string(kMinSegmentGap) + " (segments would overlap)");
}

inline void parse_system(ObjectReader& root, ExperimentConfig& c) {
    c.system = SystemParams{};
    if (!root.has("system")) return;
    ObjectReader r(root.raw("system"), "system");
    c.system.omega13 = r.number("omega13", 0.0);
    c.system.gamma21 = r.number("gamma21", 0.0);
    c.system.gamma23 = r.number("gamma23", 0.0);
    c.system.dephasing = r.number("Gamma", 0.0);
    c.system.cross_coupling = r.boolean("cross_coupling", false);
    r.finish();
    check(c.system.omega13 >= 0.0, "system.omega13", "must be >= 0");
    check(c.system.gamma21 >= 0.0, "system.gamma21", "must be >= 0");
    check(c.system.gamma23 >= 0.0, "system.gamma23", "must be >= 0");
    check(c.system.dephasing >= 0.0, "system.Gamma", "must be >= 0");
    check(!c.system.cross_coupling || c.system.omega13 > 0.0, "system.omega13",
          "must be > 0 when cross_coupling is enabled");
}

inline void parse_grid(ObjectReader& root, ExperimentConfig& c) {
    if (!root.has("grid")) throw ConfigError("grid", "required block is missing");
    ObjectReader r(root.raw("grid"), "grid");
    if (!r.has("delta")) throw ConfigError("grid.delta", "required block is missing");
    {
        ObjectReader d(r.raw("delta"), "grid.delta");
        c.delta = DeltaAxis{};
        if (d.has("values")) {
            c.delta.values = d.numbers("values");
        } else {
            DeltaRange range;
            range.start = d.number("start");
            range.stop = d.number("stop");
            range.step = d.number("step");
            check(range.step > 0.0, "grid.delta.step", "must be > 0");
            check(range.stop >= range.start, "grid.delta.stop", "must be >= start");
            c.delta.range = range;
        }
        d.finish();
        try {
            detail::require_increasing(c.delta.expand(), "values");
        } catch (const std::invalid_argument& e) {
            throw ConfigError("grid.delta", e.what());
        }
    }
    c.secondary = SweepAxis::none;
    c.secondary_values.clear();
    if (r.has("secondary")) {
        ObjectReader s(r.raw("secondary"), "grid.secondary");
        const std::string axis = s.string("axis", "none");
        try {
            c.secondary = parse_axis(axis);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("grid.secondary.axis", e.what());
        }
        check(c.secondary != SweepAxis::none, "grid.secondary.axis", "must name an axis");
        if (!s.has("values")) throw ConfigError("grid.secondary.values", "required array is missing");
        c.secondary_values = s.numbers("values");
        s.finish();
        try {
            detail::require_increasing(c.secondary_values, "values");
        } catch (const std::invalid_argument& e) {
            throw ConfigError("grid.secondary.values", e.what());
        }
    }
    r.finish();
}

inline void parse_integrator(ObjectReader& root, ExperimentConfig& c) {
    c.integrator = IntegratorConfig{};
    if (!root.has("integrator")) return;
    ObjectReader r(root.raw("integrator"), "integrator");
    c.integrator.base_step = r.number("base_step", 0.0);
    c.integrator.tolerance = r.number("tolerance", 1e-8);
    c.integrator.max_refinements = r.integer("max_refinements", 4);
    r.finish();
    check(c.integrator.base_step >= 0.0, "integrator.base_step", "must be >= 0");
    check(c.integrator.tolerance > 0.0, "integrator.tolerance", "must be > 0");
    check(c.integrator.max_refinements >= 0, "integrator.max_refinements", "must be >= 0");
}

inline void parse_ensemble(ObjectReader& root, ExperimentConfig& c) {
    c.ensemble = EnsembleDistribution{};
    if (!root.has("ensemble")) return;
    ObjectReader r(root.raw("ensemble"), "ensemble");
    const std::string shape = r.string("shape", "uniform");
    if (shape == "uniform")
        c.ensemble.shape = LineShape::uniform;
    else if (shape == "gaussian")
        c.ensemble.shape = LineShape::gaussian;
    else
        throw ConfigError("ensemble.shape", "expected \"uniform\" or \"gaussian\"");
    c.ensemble.center = r.number("center", 0.0);
    c.ensemble.width = r.number("width", 0.0);
    r.finish();
    check(c.ensemble.width >= 0.0, "ensemble.width", "must be >= 0");
    check(c.ensemble.shape != LineShape::gaussian || c.ensemble.width > 0.0, "ensemble.width",
          "must be > 0 for a gaussian line shape");
}

inline void parse_analytic(ObjectReader& root, ExperimentConfig& c) {
    c.analytic = AnalyticOverride{};
    if (!root.has("analytic")) return;
    ObjectReader r(root.raw("analytic"), "analytic");
    c.analytic.omega0 = r.optional_number("omega0");
    c.analytic.theta_dot = r.optional_number("theta_dot");
    r.finish();
    check(c.analytic.omega0.has_value() == c.analytic.theta_dot.has_value(), "analytic",
          "omega0 and theta_dot must be given together");
    if (c.analytic.omega0) {
        check(*c.analytic.omega0 > 0.0, "analytic.omega0", "must be > 0");
        check(*c.analytic.theta_dot > 0.0, "analytic.theta_dot", "must be > 0");
    }
}

inline void parse_output(ObjectReader& root, ExperimentConfig& c) {
    if (!root.has("output")) throw ConfigError("output", "required block is missing");
    ObjectReader r(root.raw("output"), "output");
    c.output.csv = r.string("csv", "");
    c.output.json = r.string("json", "");
    c.output.absorption = r.string("absorption", "");
    c.output.analytic = r.string("analytic", "");
    r.finish();
    check(!c.output.csv.empty(), "output.csv", "required path is missing");
}

}  // namespace detail

/// Parses and validates a configuration document.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig c;
    detail::ObjectReader root(j, "");
    detail::parse_protocol(root, c);
    detail::parse_system(root, c);
    detail::parse_grid(root, c);
    detail::parse_integrator(root, c);
    detail::parse_ensemble(root, c);
    detail::parse_analytic(root, c);
    detail::parse_output(root, c);
    root.finish();

    // Cross-block checks: every secondary value must give a valid protocol.
    for (std::size_t i = 0; i < c.secondary_values.size(); ++i) {
        try {
            setup_for(c.secondary, c.secondary_values[i], c.protocol, c.system);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("grid.secondary.values[" + std::to_string(i) + "]", e.what());
        }
    }
    return c;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("(document)", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("(file)", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Canonical JSON form; parse_config(to_json(c)) == c.
inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
    using oj = nlohmann::ordered_json;
    oj unburn = oj::array();
    for (const auto& u : c.protocol.unburn) unburn.push_back(oj{{"omega_max", u.omega_max}, {"offset", u.carrier_offset}});

    oj delta;
    if (c.delta.range)
        delta = oj{{"start", c.delta.range->start}, {"stop", c.delta.range->stop}, {"step", c.delta.range->step}};
    else
        delta = oj{{"values", c.delta.values}};
    oj grid{{"delta", delta}};
    if (c.secondary != SweepAxis::none)
        grid["secondary"] = oj{{"axis", axis_name(c.secondary)}, {"values", c.secondary_values}};

    oj out{
        {"protocol",
         {{"burn", {{"omega_max", c.protocol.burn_omega}, {"tau", c.protocol.burn_tau}}},
          {"unburn", unburn},
          {"unburn_tau", c.protocol.unburn_tau},
          {"segment_gap", c.protocol.segment_gap}}},
        {"system",
         {{"omega13", c.system.omega13},
          {"gamma21", c.system.gamma21},
          {"gamma23", c.system.gamma23},
          {"Gamma", c.system.dephasing},
          {"cross_coupling", c.system.cross_coupling}}},
        {"grid", grid},
        {"integrator",
         {{"base_step", c.integrator.base_step},
          {"tolerance", c.integrator.tolerance},
          {"max_refinements", c.integrator.max_refinements}}},
        {"ensemble",
         {{"shape", c.ensemble.shape == LineShape::gaussian ? "gaussian" : "uniform"},
          {"center", c.ensemble.center},
          {"width", c.ensemble.width}}},
    };
    if (c.analytic.omega0) out["analytic"] = oj{{"omega0", *c.analytic.omega0}, {"theta_dot", *c.analytic.theta_dot}};
    oj output{{"csv", c.output.csv}};
    if (!c.output.json.empty()) output["json"] = c.output.json;
    if (!c.output.absorption.empty()) output["absorption"] = c.output.absorption;
    if (!c.output.analytic.empty()) output["analytic"] = c.output.analytic;
    out["output"] = output;
    return out;
}

}  // namespace holeburn
