// sweep.hpp — detuning sweeps over an inhomogeneous ensemble.
//
// Every grid point is an independent propagation from |1⟩⟨1|. Points are
// handed to workers from a shared atomic counter and written to fixed slots,
// so the result does not depend on the number of workers.

#pragma once

#include "holeburn/dynamics.hpp"
#include "holeburn/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace holeburn {

enum class SweepAxis { none, tau, omega_max, omega_max_r, gamma, dephasing };

inline std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::none: return "none";
        case SweepAxis::tau: return "tau";
        case SweepAxis::omega_max: return "omega_max";
        case SweepAxis::omega_max_r: return "omega_max_r";
        case SweepAxis::gamma: return "gamma";
        case SweepAxis::dephasing: return "Gamma";
    }
    return "none";
}

inline SweepAxis parse_axis(const std::string& name) {
    for (auto a : {SweepAxis::none, SweepAxis::tau, SweepAxis::omega_max, SweepAxis::omega_max_r, SweepAxis::gamma,
                   SweepAxis::dephasing})
        if (axis_name(a) == name) return a;
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

namespace detail {
inline void require_increasing(const std::vector<double>& v, const std::string& what) {
    if (v.empty()) throw std::invalid_argument(what + " must not be empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw std::invalid_argument(what + " must be finite");
        if (i > 0 && !(v[i] > v[i - 1])) throw std::invalid_argument(what + " must be strictly increasing");
    }
}
}  // namespace detail

/// Detuning axis, optionally crossed with one secondary parameter. Points
/// are ordered secondary-major, detuning-minor.
struct SweepGrid {
    std::vector<double> delta_values;
    SweepAxis secondary = SweepAxis::none;
    std::vector<double> secondary_values;

    void validate() const {
        detail::require_increasing(delta_values, "delta grid");
        if (secondary != SweepAxis::none) detail::require_increasing(secondary_values, axis_name(secondary) + " grid");
    }

    std::size_t secondary_count() const { return secondary == SweepAxis::none ? 1 : secondary_values.size(); }
    std::size_t size() const { return delta_values.size() * secondary_count(); }
};

/// Evenly spaced values start, start + step, ... up to stop (inclusive).
inline std::vector<double> linspace_step(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) throw std::invalid_argument("range needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = start + step * static_cast<double>(k);
    return v;
}

struct SweepPoint {
    double delta = 0.0;
    std::optional<double> secondary;
    Populations populations{};
    double max_excited = 0.0;
    ConvergenceInfo info;
};

/// Sweep output together with every input that produced it.
struct SweepResult {
    SweepGrid grid;
    ProtocolSpec protocol;
    SystemParams params;
    IntegratorConfig integrator;
    std::vector<SweepPoint> points;

    const SweepPoint& at(std::size_t secondary_index, std::size_t delta_index) const {
        return points.at(secondary_index * grid.delta_values.size() + delta_index);
    }
};

/// Protocol and system parameters for one value of the secondary axis.
struct PointSetup {
    ProtocolSpec protocol;
    SystemParams params;
    PulseSchedule schedule;
};

inline PointSetup setup_for(SweepAxis axis, double value, const ProtocolSpec& protocol, const SystemParams& params) {
    PointSetup s{protocol, params, {}};
    switch (axis) {
        case SweepAxis::none: break;
        case SweepAxis::tau:
            // τ = 0 (simultaneous pulses) is allowed on the sweep axis.
            if (!(value >= 0.0)) throw std::invalid_argument("tau axis values must be >= 0");
            s.protocol.burn_tau = value;
            break;
        case SweepAxis::omega_max: s.protocol.burn_omega = value; break;
        case SweepAxis::omega_max_r:
            for (auto& u : s.protocol.unburn) u.omega_max = value;
            break;
        case SweepAxis::gamma: s.params.gamma21 = s.params.gamma23 = value; break;
        case SweepAxis::dephasing: s.params.dephasing = value; break;
    }
    s.params.validate();
    if (axis == SweepAxis::tau && s.protocol.burn_tau == 0.0) {
        ProtocolSpec check = s.protocol;
        check.burn_tau = 1.0;
        check.validate();
    } else {
        s.protocol.validate();
    }
    s.schedule = detail::build_train(s.protocol);
    return s;
}

inline SweepPoint run_point(const PointSetup& setup, double delta, std::optional<double> secondary,
                            const IntegratorConfig& cfg) {
    SystemParams p = setup.params;
    p.delta = delta;
    SweepPoint pt;
    pt.delta = delta;
    pt.secondary = secondary;
    try {
        const auto r = propagate(DensityMatrix::ground(0), setup.schedule, p, cfg);
        pt.populations = r.populations();
        pt.max_excited = r.max_excited;
        pt.info = r.info;
    } catch (const ConvergenceError& e) {
        pt.populations = e.best().populations();
        pt.max_excited = e.best().max_excited;
        pt.info = e.best().info;
    }
    return pt;
}

/// Propagates every grid point. `workers` = 0 uses the hardware concurrency.
inline SweepResult run_sweep(const SweepGrid& grid, const ProtocolSpec& protocol, const SystemParams& params_template,
                             const IntegratorConfig& cfg, unsigned workers = 1) {
    grid.validate();
    cfg.validate();
    params_template.validate();

    IntegratorConfig point_cfg = cfg;
    point_cfg.record_trajectory = false;

    std::vector<PointSetup> setups;
    for (std::size_t s = 0; s < grid.secondary_count(); ++s) {
        const double v = grid.secondary == SweepAxis::none ? 0.0 : grid.secondary_values[s];
        setups.push_back(setup_for(grid.secondary, v, protocol, params_template));
    }

    SweepResult result{grid, protocol, params_template, cfg, std::vector<SweepPoint>(grid.size())};
    const std::size_t n_delta = grid.delta_values.size();
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < result.points.size(); i = next.fetch_add(1)) {
            const std::size_t s = i / n_delta;
            const std::size_t d = i % n_delta;
            std::optional<double> sec;
            if (grid.secondary != SweepAxis::none) sec = grid.secondary_values[s];
            try {
                result.points[i] = run_point(setups[s], grid.delta_values[d], sec, point_cfg);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = result.points.size();
            }
        }
    };

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, result.points.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

enum class LineShape { uniform, gaussian };

/// Inhomogeneous distribution of |1⟩↔|2⟩ detunings, normalised to unit peak.
/// A uniform shape with width 0 covers every detuning.
struct EnsembleDistribution {
    LineShape shape = LineShape::uniform;
    double center = 0.0;
    double width = 0.0;

    bool operator==(const EnsembleDistribution&) const = default;

    void validate() const {
        if (shape == LineShape::gaussian && !(width > 0.0))
            throw std::invalid_argument("gaussian ensemble needs width > 0");
        if (!(width >= 0.0)) throw std::invalid_argument("ensemble width must be >= 0");
    }

    double weight(double delta) const {
        const double x = delta - center;
        if (shape == LineShape::gaussian) return std::exp(-0.5 * x * x / (width * width));
        if (width == 0.0) return 1.0;
        return std::abs(x) <= 0.5 * width ? 1.0 : 0.0;
    }
};

struct AbsorptionSample {
    double delta = 0.0;
    std::optional<double> secondary;
    double absorption = 0.0;
};

/// Absorption on the |1⟩↔|2⟩ line after the protocol: g(Δ)·P1(Δ).
inline std::vector<AbsorptionSample> absorption_profile(const SweepResult& result, const EnsembleDistribution& dist) {
    dist.validate();
    std::vector<AbsorptionSample> out;
    out.reserve(result.points.size());
    for (const auto& p : result.points)
        out.push_back({p.delta, p.secondary, dist.weight(p.delta) * std::max(0.0, p.populations[0])});
    return out;
}

}  // namespace holeburn
