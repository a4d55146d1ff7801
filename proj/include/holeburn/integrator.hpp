// integrator.hpp — fixed-step RK4 with step-halving convergence control.

#pragma once

#include "holeburn/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace holeburn {

/// Product of step size and fastest frequency allowed for the base step.
inline constexpr double kStepFrequencyProduct = 0.05;

struct IntegratorConfig {
    double base_step = 0.0;  // 0 selects the step from the frequency bound
    double tolerance = 1e-8;
    int max_refinements = 4;
    bool record_trajectory = false;

    bool operator==(const IntegratorConfig&) const = default;

    void validate() const {
        if (!(base_step >= 0.0) || !std::isfinite(base_step))
            throw std::invalid_argument("integrator base_step must be >= 0");
        if (!(tolerance > 0.0)) throw std::invalid_argument("integrator tolerance must be > 0");
        if (max_refinements < 0) throw std::invalid_argument("integrator max_refinements must be >= 0");
    }

    /// Base step for a slice whose fastest frequency is `rate`.
    double step_for(double rate) const {
        double h = rate > 0.0 ? kStepFrequencyProduct / rate : kStepFrequencyProduct;
        if (base_step > 0.0) h = std::min(h, base_step);
        return h;
    }
};

/// One classical fourth-order Runge-Kutta step of dy/dt = apply(H(t), y),
/// given the generator at the start, midpoint and end of the step.
template <class State, class Apply>
State rk4_step(const State& y, double h, const Matrix3c& h_start, const Matrix3c& h_mid,
               const Matrix3c& h_end, Apply&& apply) {
    const State k1 = apply(h_start, y);
    const State k2 = apply(h_mid, State(y + (0.5 * h) * k1));
    const State k3 = apply(h_mid, State(y + (0.5 * h) * k2));
    const State k4 = apply(h_end, State(y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates [t0, t1] in `steps` equal RK4 steps with generator `hamiltonian(t)`.
/// `observe(step, t, y)` is called for step = 0..steps.
template <class State, class Hamiltonian, class Apply, class Observer>
State integrate_fixed(State y, double t0, double t1, std::size_t steps, Hamiltonian&& hamiltonian,
                      Apply&& apply, Observer&& observe) {
    const double h = (t1 - t0) / static_cast<double>(steps);
    observe(std::size_t{0}, t0, y);
    Matrix3c h_start = hamiltonian(t0);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = t0 + h * static_cast<double>(k);
        const double t_next = k + 1 == steps ? t1 : t0 + h * static_cast<double>(k + 1);
        const Matrix3c h_mid = hamiltonian(t + 0.5 * h);
        const Matrix3c h_end = hamiltonian(t_next);
        y = rk4_step(y, h, h_start, h_mid, h_end, apply);
        h_start = h_end;
        observe(k + 1, t_next, y);
    }
    return y;
}

inline std::size_t steps_for(double length, double step) {
    if (length <= 0.0) return 0;
    const double n = std::ceil(length / step - 1e-9);
    return static_cast<std::size_t>(std::max(1.0, n));
}

struct ConvergenceInfo {
    bool converged = false;
    double residual = 0.0;  // max change of the final state between the last two step sizes
    int refinements = 0;    // halvings beyond the first comparison
    double step_scale = 1.0;  // accepted step / base step
    std::size_t steps = 0;  // RK4 steps of the accepted run
};

/// Runs `run(level)` at step sizes base·2^-level until two consecutive
/// levels agree on the final populations within `tolerance`. `run` returns
/// a result with a `populations()` accessor and an `info` member; a
/// `distance(other)` member, when present, replaces the population check.
template <class Result, class Run>
Result converge(const IntegratorConfig& cfg, Run&& run) {
    Result coarse = run(0);
    Result fine = run(1);
    for (int level = 1;; ++level) {
        double residual = 0.0;
        if constexpr (requires { coarse.distance(fine); })
            residual = coarse.distance(fine);
        else
            residual = max_abs_diff(coarse.populations(), fine.populations());
        fine.info.residual = residual;
        fine.info.refinements = level - 1;
        fine.info.step_scale = std::ldexp(1.0, -level);
        if (residual <= cfg.tolerance) {
            fine.info.converged = true;
            return fine;
        }
        if (level - 1 >= cfg.max_refinements) {
            fine.info.converged = false;
            return fine;
        }
        coarse = std::move(fine);
        fine = run(level + 1);
    }
}

}  // namespace holeburn
