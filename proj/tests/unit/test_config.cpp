#include "holeburn/config.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>

using namespace holeburn;
using nlohmann::json;

namespace {
json minimal() {
    return json::parse(R"({
        "protocol": {"burn": {"omega_max": 10}},
        "grid": {"delta": {"start": -10, "stop": 10, "step": 1}},
        "output": {"csv": "out.csv"}
    })");
}

json full() {
    return json::parse(R"({
        "protocol": {"burn": {"omega_max": 100, "tau": 1.5},
                     "unburn": [{"omega_max": 5, "offset": -500}, {"omega_max": 4, "offset": 500}],
                     "unburn_tau": -1.2, "segment_gap": 12},
        "system": {"omega13": 50, "gamma21": 0.1, "gamma23": 0.2, "Gamma": 0.3, "cross_coupling": true},
        "grid": {"delta": {"values": [-1, 0, 0.5]},
                 "secondary": {"axis": "omega_max_r", "values": [1, 2.5]}},
        "integrator": {"base_step": 0.001, "tolerance": 1e-7, "max_refinements": 3},
        "ensemble": {"shape": "gaussian", "center": 2, "width": 300},
        "analytic": {"omega0": 20, "theta_dot": 0.5},
        "output": {"csv": "a.csv", "json": "a.json", "absorption": "b.csv", "analytic": "c.csv"}
    })");
}

std::string error_path(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "(accepted)";
}
}  // namespace

TEST(Config, MinimalDefaults) {
    const auto c = parse_config(minimal());
    EXPECT_EQ(c.protocol.burn_omega, 10.0);
    EXPECT_EQ(c.protocol.burn_tau, kDefaultDelay);
    EXPECT_TRUE(c.protocol.unburn.empty());
    EXPECT_EQ(c.system, SystemParams{});
    EXPECT_EQ(c.integrator, IntegratorConfig{});
    EXPECT_EQ(c.grid().delta_values.size(), 21u);
    EXPECT_EQ(c.secondary, SweepAxis::none);
}

TEST(Config, FullDocument) {
    const auto c = parse_config(full());
    ASSERT_EQ(c.protocol.unburn.size(), 2u);
    EXPECT_EQ(c.protocol.unburn[0].carrier_offset, -500.0);
    EXPECT_EQ(c.system.dephasing, 0.3);
    EXPECT_TRUE(c.system.cross_coupling);
    EXPECT_EQ(c.secondary, SweepAxis::omega_max_r);
    EXPECT_EQ(c.integrator.max_refinements, 3);
    EXPECT_EQ(c.ensemble.shape, LineShape::gaussian);
    EXPECT_EQ(*c.analytic.theta_dot, 0.5);
    EXPECT_EQ(c.output.analytic, "c.csv");
}

TEST(Config, RoundTrip) {
    for (const auto& j : {minimal(), full()}) {
        const auto c = parse_config(j);
        const auto again = parse_config_text(to_json(c).dump());
        EXPECT_EQ(again, c);
        EXPECT_EQ(to_json(again).dump(), to_json(c).dump());
    }
}

TEST(Config, RoundTripPreservesAwkwardNumbers) {
    auto j = minimal();
    j["protocol"]["burn"]["tau"] = 0.1 + 0.2;
    j["grid"]["delta"] = {{"values", {-1e-300, 1.0 / 3.0, 12345.678901234567}}};
    const auto c = parse_config(j);
    EXPECT_EQ(parse_config_text(to_json(c).dump()), c);
}

TEST(Config, UnknownKeysRejectedWithPath) {
    const std::vector<std::pair<std::function<void(json&)>, std::string>> cases{
        {[](json& j) { j["extra"] = 1; }, "extra"},
        {[](json& j) { j["protocol"]["burn"]["sigma"] = 1; }, "protocol.burn.sigma"},
        {[](json& j) { j["protocol"]["unburn"] = json::array({{{"omega_max", 1}, {"phase", 0}}}); },
         "protocol.unburn[0].phase"},
        {[](json& j) { j["system"] = {{"gamma", 0.1}}; }, "system.gamma"},
        {[](json& j) { j["grid"]["delta"]["count"] = 3; }, "grid.delta.count"},
        {[](json& j) { j["output"]["png"] = "x.png"; }, "output.png"},
    };
    for (const auto& [mutate, path] : cases) {
        auto j = minimal();
        mutate(j);
        EXPECT_EQ(error_path(j), path);
    }
}

TEST(Config, UnburnAtOrAboveBurnNamesSegment) {
    auto j = minimal();
    j["protocol"]["unburn"] = json::array({{{"omega_max", 5}}, {{"omega_max", 10}}});
    EXPECT_EQ(error_path(j), "protocol.unburn[1].omega_max");
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("protocol.unburn[1]"), std::string::npos);
    }
}

TEST(Config, NegativeRatesRejected) {
    auto j = minimal();
    j["system"] = {{"Gamma", -0.1}};
    EXPECT_EQ(error_path(j), "system.Gamma");
    j["system"] = {{"gamma21", -1}};
    EXPECT_EQ(error_path(j), "system.gamma21");
}

TEST(Config, OtherValidationErrors) {
    auto j = minimal();
    j["protocol"]["burn"]["omega_max"] = "ten";
    EXPECT_EQ(error_path(j), "protocol.burn.omega_max");

    j = minimal();
    j["protocol"]["burn"].erase("omega_max");
    EXPECT_EQ(error_path(j), "protocol.burn.omega_max");

    j = minimal();
    j["protocol"]["segment_gap"] = 5;
    EXPECT_EQ(error_path(j), "protocol.segment_gap");

    j = minimal();
    j["protocol"]["unburn_tau"] = 1;
    EXPECT_EQ(error_path(j), "protocol.unburn_tau");

    j = minimal();
    j["system"] = {{"cross_coupling", true}};
    EXPECT_EQ(error_path(j), "system.omega13");

    j = minimal();
    j["grid"]["delta"] = {{"values", {1, 0}}};
    EXPECT_EQ(error_path(j), "grid.delta");

    j = minimal();
    j["grid"]["secondary"] = {{"axis", "sigma"}, {"values", {1}}};
    EXPECT_EQ(error_path(j), "grid.secondary.axis");

    j = minimal();
    j["grid"]["secondary"] = {{"axis", "tau"}, {"values", {0, -1}}};
    EXPECT_EQ(error_path(j), "grid.secondary.values");

    j = minimal();
    j["grid"]["secondary"] = {{"axis", "omega_max"}, {"values", {-5, 5}}};
    EXPECT_EQ(error_path(j), "grid.secondary.values[0]");

    j = minimal();
    j["integrator"] = {{"max_refinements", 1.5}};
    EXPECT_EQ(error_path(j), "integrator.max_refinements");

    j = minimal();
    j["ensemble"] = {{"shape", "gaussian"}};
    EXPECT_EQ(error_path(j), "ensemble.width");

    j = minimal();
    j["analytic"] = {{"omega0", 3}};
    EXPECT_EQ(error_path(j), "analytic");

    j = minimal();
    j.erase("output");
    EXPECT_EQ(error_path(j), "output");

    j = minimal();
    j["output"]["csv"] = "";
    EXPECT_EQ(error_path(j), "output.csv");

    EXPECT_EQ(error_path(json::array()), "");
}

TEST(Config, InvalidJsonText) {
    EXPECT_THROW(parse_config_text("{ not json"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, ShippedConfigsParse) {
    const std::filesystem::path dir = std::filesystem::path(HOLEBURN_SOURCE_DIR) / "configs";
    int n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
        ++n;
    }
    EXPECT_GT(n, 0);
}

TEST(Config, SchemaListsExactlyTheAcceptedKeys) {
    std::ifstream in(std::filesystem::path(HOLEBURN_SOURCE_DIR) / "schemas" / "experiment_config.schema.json");
    const json schema = json::parse(in);
    const json doc = to_json(parse_config(full()));

    // Every key the serializer emits is declared in the schema, and every
    // declared property of the document's blocks is emitted.
    std::function<void(const json&, const json&, const std::string&)> walk = [&](const json& s, const json& d,
                                                                               const std::string& path) {
        if (!d.is_object()) return;
        ASSERT_TRUE(s.contains("properties")) << path;
        EXPECT_EQ(s.value("additionalProperties", true), false) << path;
        for (auto it = d.begin(); it != d.end(); ++it) {
            ASSERT_TRUE(s["properties"].contains(it.key())) << path << "." << it.key();
            json sub = s["properties"][it.key()];
            if (sub.contains("oneOf")) {
                json chosen;
                for (const auto& alt : sub["oneOf"])
                    if (it.value().contains(alt["required"][0].get<std::string>())) chosen = alt;
                ASSERT_FALSE(chosen.is_null()) << path << "." << it.key();
                sub = chosen;
            }
            if (sub.value("type", "") == "array" && sub.contains("items") && it.value().is_array())
                for (const auto& item : it.value()) walk(sub["items"], item, path + "." + it.key() + "[]");
            else
                walk(sub, it.value(), path + "." + it.key());
        }
        for (auto it = s["properties"].begin(); it != s["properties"].end(); ++it)
            EXPECT_TRUE(d.contains(it.key())) << "schema property not emitted: " << path << "." << it.key();
    };
    walk(schema, doc, "");
}
