#include "holeburn/analytics.hpp"
#include "holeburn/sweep.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <numbers>

using namespace holeburn;

namespace {
bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void expect_identical(const SweepResult& a, const SweepResult& b) {
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto& p = a.points[i];
        const auto& q = b.points[i];
        EXPECT_TRUE(bitwise_equal(p.delta, q.delta));
        for (int k = 0; k < 3; ++k) EXPECT_TRUE(bitwise_equal(p.populations[k], q.populations[k])) << i;
        EXPECT_TRUE(bitwise_equal(p.max_excited, q.max_excited));
        EXPECT_EQ(p.info.steps, q.info.steps);
        EXPECT_EQ(p.info.converged, q.info.converged);
        EXPECT_EQ(p.secondary, q.secondary);
    }
}
}  // namespace

TEST(LinspaceStep, InclusiveEndpoints) {
    const auto v = linspace_step(-50.0, 50.0, 0.5);
    ASSERT_EQ(v.size(), 201u);
    EXPECT_EQ(v.front(), -50.0);
    EXPECT_EQ(v.back(), 50.0);
    EXPECT_EQ(v[100], 0.0);
    EXPECT_EQ(linspace_step(0.0, 4.0, 0.1).size(), 41u);
    EXPECT_THROW(linspace_step(1.0, 0.0, 0.1), std::invalid_argument);
    EXPECT_THROW(linspace_step(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(SweepAxis, NamesRoundTrip) {
    for (auto a : {SweepAxis::none, SweepAxis::tau, SweepAxis::omega_max, SweepAxis::omega_max_r, SweepAxis::gamma,
                   SweepAxis::dephasing})
        EXPECT_EQ(parse_axis(axis_name(a)), a);
    EXPECT_THROW(parse_axis("sigma"), std::invalid_argument);
}

TEST(SweepGrid, RejectsUnsortedValues) {
    EXPECT_THROW((SweepGrid{{1.0, 0.0}, SweepAxis::none, {}}.validate()), std::invalid_argument);
    EXPECT_THROW((SweepGrid{{}, SweepAxis::none, {}}.validate()), std::invalid_argument);
    EXPECT_THROW((SweepGrid{{0.0}, SweepAxis::tau, {}}.validate()), std::invalid_argument);
    EXPECT_THROW((SweepGrid{{0.0, 0.0}, SweepAxis::none, {}}.validate()), std::invalid_argument);
}

TEST(RunSweep, SinglePointMatchesPropagate) {
    const ProtocolSpec spec;
    const auto r = run_sweep({{0.0}, SweepAxis::none, {}}, spec, SystemParams{}, IntegratorConfig{});
    ASSERT_EQ(r.points.size(), 1u);
    const auto direct = propagate(DensityMatrix::ground(0), make_schedule(spec), SystemParams{});
    for (int k = 0; k < 3; ++k) EXPECT_EQ(r.points[0].populations[k], direct.populations()[k]);
    EXPECT_EQ(r.points[0].max_excited, direct.max_excited);
    EXPECT_FALSE(r.points[0].secondary.has_value());
}

TEST(RunSweep, WorkerCountDoesNotChangeResults) {
    const SweepGrid grid{linspace_step(-30.0, 30.0, 5.0), SweepAxis::omega_max, {10.0, 20.0}};
    SystemParams p;
    p.dephasing = 0.1;
    const auto one = run_sweep(grid, ProtocolSpec{}, p, IntegratorConfig{}, 1);
    const auto four = run_sweep(grid, ProtocolSpec{}, p, IntegratorConfig{}, 4);
    const auto many = run_sweep(grid, ProtocolSpec{}, p, IntegratorConfig{}, 64);
    expect_identical(one, four);
    expect_identical(one, many);
}

TEST(RunSweep, SecondaryMajorOrdering) {
    const SweepGrid grid{{-1.0, 0.0, 1.0}, SweepAxis::tau, {0.0, 1.0}};
    const auto r = run_sweep(grid, ProtocolSpec{}, SystemParams{}, IntegratorConfig{});
    ASSERT_EQ(r.points.size(), 6u);
    EXPECT_EQ(r.at(1, 2).delta, 1.0);
    EXPECT_EQ(*r.at(1, 2).secondary, 1.0);
    EXPECT_EQ(*r.at(0, 2).secondary, 0.0);
}

TEST(RunSweep, ProfileIsEvenInDetuning) {
    SystemParams p;
    p.dephasing = 0.2;
    p.gamma21 = p.gamma23 = 0.1;
    const SweepGrid grid{linspace_step(-40.0, 40.0, 8.0), SweepAxis::none, {}};
    const auto r = run_sweep(grid, ProtocolSpec{15.0}, p, IntegratorConfig{});
    const std::size_t n = grid.delta_values.size();
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k)
            EXPECT_NEAR(r.points[i].populations[k], r.points[n - 1 - i].populations[k], 1e-8);
}

TEST(RunSweep, HolePlateauInsideEdge) {
    for (double omega : {10.0, 15.0, 20.0}) {
        const double edge = delta_edge(AnalyticHoleModel::from_pulses(omega, kDefaultDelay));
        const SweepGrid grid{linspace_step(-0.85 * edge, 0.85 * edge, 0.85 * edge / 4), SweepAxis::none, {}};
        const auto r = run_sweep(grid, ProtocolSpec{omega}, SystemParams{}, IntegratorConfig{});
        for (const auto& pt : r.points) EXPECT_GT(pt.populations[2], 0.95) << omega << " " << pt.delta;
    }
}

TEST(RunSweep, CrossCouplingDips) {
    SystemParams p;
    p.cross_coupling = true;
    p.omega13 = 50.0;
    const auto r = run_sweep({{-50.0, 50.0}, SweepAxis::none, {}}, ProtocolSpec{20.0}, p, IntegratorConfig{});
    for (const auto& pt : r.points) EXPECT_LT(pt.populations[2], 0.1) << pt.delta;
}

TEST(RunSweep, RejectsInvalidSecondaryValue) {
    const SweepGrid grid{{0.0}, SweepAxis::omega_max_r, {20.0}};
    ProtocolSpec spec{10.0};
    spec.unburn = {{5.0, 0.0}};
    EXPECT_THROW(run_sweep(grid, spec, SystemParams{}, IntegratorConfig{}), std::invalid_argument);
    EXPECT_THROW(run_sweep({{0.0}, SweepAxis::dephasing, {-1.0}}, ProtocolSpec{}, SystemParams{}, IntegratorConfig{}),
                 std::invalid_argument);
}

TEST(SetupFor, AxesUpdateTheRightField) {
    ProtocolSpec spec{100.0};
    spec.unburn = {{5.0, 0.0}, {5.0, 500.0}};
    EXPECT_EQ(setup_for(SweepAxis::omega_max_r, 7.0, spec, {}).protocol.unburn[1].omega_max, 7.0);
    EXPECT_EQ(setup_for(SweepAxis::omega_max, 120.0, spec, {}).protocol.burn_omega, 120.0);
    EXPECT_EQ(setup_for(SweepAxis::tau, 0.0, spec, {}).protocol.burn_tau, 0.0);
    const auto g = setup_for(SweepAxis::gamma, 0.3, spec, {});
    EXPECT_EQ(g.params.gamma21, 0.3);
    EXPECT_EQ(g.params.gamma23, 0.3);
    EXPECT_EQ(setup_for(SweepAxis::dephasing, 0.2, spec, {}).params.dephasing, 0.2);
    EXPECT_THROW(setup_for(SweepAxis::tau, -1.0, spec, {}), std::invalid_argument);
}

TEST(Absorption, FullyTransferredEnsembleIsTransparent) {
    SweepResult r;
    r.grid = {{-1.0, 0.0, 1.0}, SweepAxis::none, {}};
    for (double d : r.grid.delta_values) {
        SweepPoint p;
        p.delta = d;
        p.populations = {0.0, 0.0, 1.0};
        r.points.push_back(p);
    }
    for (const auto& s : absorption_profile(r, EnsembleDistribution{})) EXPECT_EQ(s.absorption, 0.0);
}

TEST(Absorption, UniformNotchAroundHole) {
    const double edge = delta_edge(AnalyticHoleModel::from_pulses(20.0, kDefaultDelay));
    const SweepGrid grid{{-0.5 * edge, 0.0, 0.5 * edge, 6.0 * edge}, SweepAxis::none, {}};
    const auto r = run_sweep(grid, ProtocolSpec{20.0}, SystemParams{}, IntegratorConfig{});
    const auto a = absorption_profile(r, EnsembleDistribution{});
    EXPECT_LT(a[0].absorption, 0.05);
    EXPECT_LT(a[1].absorption, 0.01);
    EXPECT_LT(a[2].absorption, 0.05);
    EXPECT_GT(a[3].absorption, 0.5);
}

TEST(Absorption, LineShapeWeights) {
    const EnsembleDistribution g{LineShape::gaussian, 10.0, 2.0};
    EXPECT_DOUBLE_EQ(g.weight(10.0), 1.0);
    EXPECT_NEAR(g.weight(12.0), std::exp(-0.5), 1e-15);
    const EnsembleDistribution box{LineShape::uniform, 0.0, 4.0};
    EXPECT_EQ(box.weight(1.9), 1.0);
    EXPECT_EQ(box.weight(2.1), 0.0);
    EXPECT_EQ(EnsembleDistribution{}.weight(1e9), 1.0);
    EXPECT_THROW((EnsembleDistribution{LineShape::gaussian, 0.0, 0.0}.validate()), std::invalid_argument);
}
