// dynamics.hpp — Lindblad and Schrödinger propagation through a pulse schedule.

#pragma once

#include "holeburn/hamiltonian.hpp"
#include "holeburn/integrator.hpp"
#include "holeburn/pulses.hpp"
#include "holeburn/types.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace holeburn {

/// Trajectory samples taken per frame interval.
inline constexpr std::size_t kSamplesPerSegment = 200;

/// D[|a⟩⟨b|]ρ = ρ_bb |a⟩⟨a| - ½(|b⟩⟨b|ρ + ρ|b⟩⟨b|), accumulated into `out`.
inline void add_jump_dissipator(Matrix3c& out, const Matrix3c& rho, int a, int b, double rate) {
    if (rate == 0.0) return;
    out(a, a) += rate * rho(b, b);
    for (int k = 0; k < 3; ++k) {
        out(b, k) -= 0.5 * rate * rho(b, k);
        out(k, b) -= 0.5 * rate * rho(k, b);
    }
}

/// ρ̇ = -i[H, ρ] + γ21 D[|1⟩⟨2|]ρ + γ23 D[|3⟩⟨2|]ρ + Γ D[|2⟩⟨2| - |1⟩⟨1| - |3⟩⟨3|]ρ.
inline Matrix3c lindblad_rhs(const Matrix3c& rho, const Matrix3c& h, const SystemParams& params) {
    const Complex minus_i(0.0, -1.0);
    Matrix3c out = minus_i * (h * rho - rho * h);
    add_jump_dissipator(out, rho, 0, 1, params.gamma21);
    add_jump_dissipator(out, rho, 2, 1, params.gamma23);
    if (params.dephasing != 0.0) {
        // The dephasing operator is diag(-1, 1, -1) and squares to the identity,
        // so it damps only the |2⟩ ↔ ground coherences, at rate 2Γ.
        const double k = 2.0 * params.dephasing;
        out(0, 1) -= k * rho(0, 1);
        out(1, 0) -= k * rho(1, 0);
        out(1, 2) -= k * rho(1, 2);
        out(2, 1) -= k * rho(2, 1);
    }
    return out;
}

inline Matrix3c lindblad_rhs(const DensityMatrix& rho, const Matrix3c& h, const SystemParams& params) {
    return lindblad_rhs(rho.matrix(), h, params);
}

struct TrajectorySample {
    double t = 0.0;
    Populations populations{};
};

struct PropagationResult {
    DensityMatrix rho;
    std::vector<TrajectorySample> trajectory;
    double max_excited = 0.0;  // largest |2⟩ population seen at any RK4 node
    ConvergenceInfo info;

    Populations populations() const { return rho.populations(); }
};

/// Thrown when step halving fails to settle within max_refinements. Carries
/// the finest run performed.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(PropagationResult best)
        : std::runtime_error("propagation did not converge: residual " + std::to_string(best.info.residual)),
          best_(std::move(best)) {}

    double residual() const { return best_.info.residual; }
    const PropagationResult& best() const { return best_; }

private:
    PropagationResult best_;
};

namespace detail {

inline Populations populations_of(const Matrix3c& rho) {
    return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real()};
}

inline Populations populations_of(const Vector3c& psi) {
    return {std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))};
}

/// Fastest frequency the integrator must resolve inside one frame.
inline double frame_rate(const FrameInterval& fi, const SystemParams& params) {
    double rate = std::max(fi.amplitude_bound, std::abs(params.delta - fi.carrier_offset));
    if (params.cross_coupling) rate = std::max(rate, params.omega13);
    rate = std::max(rate, params.gamma21 + params.gamma23 + 2.0 * params.dephasing);
    return rate;
}

/// Hamiltonian restricted to the segments that can be nonzero inside a frame.
/// Summation order matches pulse_amplitudes, so values are identical.
class FrameHamiltonian {
public:
    FrameHamiltonian(const PulseSchedule& schedule, const SystemParams& params, const FrameInterval& fi)
        : params_(params), offset_(fi.carrier_offset) {
        for (const auto& seg : schedule.segments()) {
            const auto& q = seg.pair;
            const double d = std::max({q.first_peak() - fi.end, fi.start - q.last_peak(), 0.0});
            if (d <= kTruncationWidths * q.sigma) pairs_.push_back(&q);
        }
    }

    Matrix3c operator()(double t) const {
        double o12 = 0.0;
        double o23 = 0.0;
        for (const PulsePair* p : pairs_) {
            o12 += p->omega12(t);
            o23 += p->omega23(t);
        }
        return build_hamiltonian(params_, o12, o23, offset_, t);
    }

private:
    const SystemParams& params_;
    double offset_;
    std::vector<const PulsePair*> pairs_;
};

template <class State>
struct Run {
    State state;
    std::vector<TrajectorySample> trajectory;
    double max_excited = 0.0;
    ConvergenceInfo info;

    Populations populations() const { return populations_of(state); }

    // Density matrices compare every element: RK4 damps fast coherences
    // long before the populations notice, and purity lives in them.
    double distance(const Run& other) const {
        if constexpr (std::is_same_v<State, Matrix3c>)
            return (state - other.state).cwiseAbs().maxCoeff();
        else
            return max_abs_diff(populations(), other.populations());
    }
};

/// One pass over every frame with the step size base·2^-level.
template <class State, class Apply>
Run<State> run_schedule(const State& initial, const PulseSchedule& schedule, const SystemParams& params,
                        const IntegratorConfig& cfg, int level, Apply&& apply) {
    Run<State> run{initial, {}, populations_of(initial)[1], {}};
    const std::size_t scale = std::size_t{1} << level;
    for (const auto& fi : frame_intervals(schedule)) {
        const double length = fi.end - fi.start;
        const std::size_t steps = steps_for(length, cfg.step_for(frame_rate(fi, params))) * scale;
        if (steps == 0) continue;
        FrameHamiltonian hamiltonian(schedule, params, fi);
        std::size_t next_sample = 0;
        auto observe = [&](std::size_t step, double t, const State& y) {
            const Populations p = populations_of(y);
            run.max_excited = std::max(run.max_excited, p[1]);
            if (!cfg.record_trajectory) return;
            while (next_sample < kSamplesPerSegment &&
                   next_sample * steps / (kSamplesPerSegment - 1) == step) {
                run.trajectory.push_back({t, p});
                ++next_sample;
            }
        };
        run.state = integrate_fixed(run.state, fi.start, fi.end, steps, hamiltonian, apply, observe);
        run.info.steps += steps;
    }
    return run;
}

template <class State, class Apply>
Run<State> run_converged(const State& initial, const PulseSchedule& schedule, const SystemParams& params,
                         const IntegratorConfig& cfg, Apply&& apply) {
    return converge<Run<State>>(
        cfg, [&](int level) { return run_schedule(initial, schedule, params, cfg, level, apply); });
}

template <class State>
PropagationResult to_result(Run<State>&& run, Matrix3c rho) {
    PropagationResult r{DensityMatrix::unchecked(rho), std::move(run.trajectory), run.max_excited, run.info};
    if (!r.info.converged) throw ConvergenceError(std::move(r));
    return r;
}

inline void check_inputs(const SystemParams& params, const IntegratorConfig& cfg) {
    params.validate();
    cfg.validate();
}

}  // namespace detail

/// Lindblad propagation of ρ through the whole schedule.
inline PropagationResult propagate_density(const DensityMatrix& rho0, const PulseSchedule& schedule,
                                           const SystemParams& params, const IntegratorConfig& cfg = {}) {
    detail::check_inputs(params, cfg);
    if (schedule.empty()) {
        PropagationResult r{rho0, {}, rho0.populations()[1], {}};
        r.info.converged = true;
        return r;
    }
    auto apply = [&params](const Matrix3c& h, const Matrix3c& rho) { return lindblad_rhs(rho, h, params); };
    auto run = detail::run_converged<Matrix3c>(rho0.matrix(), schedule, params, cfg, apply);
    Matrix3c rho = run.state;
    return detail::to_result(std::move(run), rho);
}

/// Schrödinger propagation of a pure state; decoherence rates are ignored.
inline std::pair<Vector3c, PropagationResult> propagate_state(const Vector3c& psi0, const PulseSchedule& schedule,
                                                              const SystemParams& params,
                                                              const IntegratorConfig& cfg = {}) {
    detail::check_inputs(params, cfg);
    if (schedule.empty()) {
        PropagationResult r{DensityMatrix::from_state(psi0), {}, std::norm(psi0(1)), {}};
        r.info.converged = true;
        return {psi0, r};
    }
    const Complex minus_i(0.0, -1.0);
    auto apply = [minus_i](const Matrix3c& h, const Vector3c& psi) -> Vector3c { return minus_i * (h * psi); };
    auto run = detail::run_converged<Vector3c>(psi0, schedule, params, cfg, apply);
    Vector3c psi = run.state;
    return {psi, detail::to_result(std::move(run), Matrix3c(psi * psi.adjoint()))};
}

/// Propagates ρ0 through the schedule. Closed systems starting from a pure
/// state take the Schrödinger path; everything else uses the master equation.
inline PropagationResult propagate(const DensityMatrix& rho0, const PulseSchedule& schedule,
                                   const SystemParams& params, const IntegratorConfig& cfg = {}) {
    if (schedule.empty() || !params.closed() || std::abs(rho0.purity() - 1.0) > 1e-12)
        return propagate_density(rho0, schedule, params, cfg);
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(rho0.matrix());
    const Vector3c psi0 = es.eigenvectors().col(2).normalized();
    return propagate_state(psi0, schedule, params, cfg).second;
}

}  // namespace holeburn
