// analytics.hpp — dressed-state spectrum, adiabaticity diagnostics and the
// sinc-profile model of the spectral hole.
//
// The hole model treats the transfer as a constant-gap, constant-coupling
// passage of duration T = π/(2θ̇) and evaluates the normalised first-order
// transition probability out of the dark state,
//
//     P3(Δ) = 1 - sinc²(π δε / 4θ̇),   δε = (√(Δ² + Ω0²) - |Δ|) / 2,
//
// whose outermost zero gives the hole edge Δ_edge = Ω0²/16θ̇ - 4θ̇. Gaussian
// pulses are mapped onto the model through their values halfway between the
// peaks: Ω0 ≈ √2 e^{-τ²/8σ²} Ω_max and θ̇ ≈ τ/2σ².

#pragma once

#include "holeburn/integrator.hpp"
#include "holeburn/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace holeburn {

struct DressedState {
    double eps0 = 0.0;
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double omega0 = 0.0;
    Eigen::Vector3d dark = Eigen::Vector3d::Zero();
    Eigen::Vector3d plus = Eigen::Vector3d::Zero();
    Eigen::Vector3d minus = Eigen::Vector3d::Zero();
};

/// Eigensystem of the cross-coupling-free Hamiltonian at one instant:
///   |D⟩ = cos θ|1⟩ - sin θ|3⟩,                      ε0 = 0
///   |+⟩ = sin θ sin φ|1⟩ + cos φ|2⟩ + cos θ sin φ|3⟩,  ε+ = (Δ + √(Δ²+Ω0²))/2
///   |−⟩ = sin θ cos φ|1⟩ - sin φ|2⟩ + cos θ cos φ|3⟩,  ε− = (Δ - √(Δ²+Ω0²))/2
/// with tan θ = Ω12/Ω23 and tan 2φ = Ω0/Δ.
inline DressedState dressed_spectrum(double delta, double omega12, double omega23) {
    if (!(omega12 >= 0.0) || !(omega23 >= 0.0))
        throw std::invalid_argument("dressed_spectrum: amplitudes must be nonnegative");
    if (omega12 == 0.0 && omega23 == 0.0)
        throw std::invalid_argument("dressed_spectrum: both amplitudes are zero");

    DressedState s;
    s.omega0 = std::hypot(omega12, omega23);
    s.theta = std::atan2(omega12, omega23);
    s.phi = 0.5 * std::atan2(s.omega0, delta);

    const double r = std::hypot(delta, s.omega0);
    const double w2 = s.omega0 * s.omega0;
    if (delta >= 0.0) {
        s.eps_plus = 0.5 * (delta + r);
        s.eps_minus = -0.5 * w2 / (delta + r);
    } else {
        s.eps_plus = 0.5 * w2 / (r - delta);
        s.eps_minus = 0.5 * (delta - r);
    }

    const double st = std::sin(s.theta), ct = std::cos(s.theta);
    const double sp = std::sin(s.phi), cp = std::cos(s.phi);
    s.dark = {ct, 0.0, -st};
    s.plus = {st * sp, cp, ct * sp};
    s.minus = {st * cp, -sp, ct * cp};
    return s;
}

struct NonadiabaticCoupling {
    double c_plus = 0.0;   // |⟨+|Ḋ⟩| = |θ̇| sin φ
    double c_minus = 0.0;  // |⟨−|Ḋ⟩| = |θ̇| cos φ
};

inline NonadiabaticCoupling nonadiabatic_coupling(const DressedState& state, double theta_dot) {
    const double a = std::abs(theta_dot);
    return {a * std::sin(state.phi), a * std::cos(state.phi)};
}

struct AnalyticHoleModel {
    double omega0_eff = 0.0;
    double theta_dot_eff = 0.0;

    static AnalyticHoleModel from_pulses(double omega_max, double tau, double sigma = 1.0) {
        AnalyticHoleModel m;
        m.omega0_eff = std::numbers::sqrt2 * std::exp(-tau * tau / (8.0 * sigma * sigma)) * omega_max;
        m.theta_dot_eff = tau / (2.0 * sigma * sigma);
        m.validate();
        return m;
    }

    void validate() const {
        if (!(omega0_eff > 0.0)) throw std::invalid_argument("hole model: omega0 must be > 0");
        if (!(theta_dot_eff > 0.0)) throw std::invalid_argument("hole model: theta_dot must be > 0");
    }
};

inline double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

/// Dark-to-bright gap δε for the bright state that approaches the dark state.
inline double bright_gap(double delta, double omega0) {
    const double a = std::abs(delta);
    return 0.5 * omega0 * omega0 / (std::hypot(a, omega0) + a);
}

inline double analytic_p3(double delta, const AnalyticHoleModel& model) {
    const double x = std::numbers::pi * bright_gap(delta, model.omega0_eff) / (4.0 * model.theta_dot_eff);
    const double s = sinc(x);
    return std::clamp(1.0 - s * s, 0.0, 1.0);
}

/// Large-detuning tail of analytic_p3: π²Ω0⁴ / (768 θ̇² Δ²).
inline double analytic_p3_tail(double delta, const AnalyticHoleModel& model) {
    const double w2 = model.omega0_eff * model.omega0_eff;
    const double td = model.theta_dot_eff;
    return std::numbers::pi * std::numbers::pi * w2 * w2 / (768.0 * td * td * delta * delta);
}

class NoPlateauError : public std::domain_error {
public:
    NoPlateauError() : std::domain_error("no adiabatic plateau exists (omega0 < 8 theta_dot)") {}
};

/// Leading-order hole edge Ω0²/16θ̇, without the -4θ̇ correction.
inline double edge_leading_term(const AnalyticHoleModel& model) {
    return model.omega0_eff * model.omega0_eff / (16.0 * model.theta_dot_eff);
}

/// Δ_edge = Ω0²/16θ̇ - 4θ̇, the outermost zero of 1 - P3. Zero at the
/// threshold Ω0 = 8θ̇; throws NoPlateauError below it.
inline double delta_edge(const AnalyticHoleModel& model) {
    model.validate();
    if (model.omega0_eff < 8.0 * model.theta_dot_eff * (1.0 - 1e-12)) throw NoPlateauError();
    return std::max(0.0, edge_leading_term(model) - 4.0 * model.theta_dot_eff);
}

/// Ratio of the dark-bright gap to the nonadiabatic coupling of the bright
/// state that closes in on the dark state (|−⟩ for Δ ≥ 0, |+⟩ for Δ < 0).
inline double adiabaticity_margin(double delta, const AnalyticHoleModel& model) {
    const double phi = 0.5 * std::atan2(model.omega0_eff, std::abs(delta));
    return bright_gap(delta, model.omega0_eff) / (model.theta_dot_eff * std::cos(phi));
}

/// Final P3 of the idealised passage: constant Ω0 and Δ, θ = θ̇t on [0, T]
/// with T = π/2θ̇, Ω12 = Ω0 sin θ, Ω23 = Ω0 cos θ, starting in |1⟩.
/// Integrated with the same RK4 and step-halving control as propagate().
inline double linear_theta_oracle(double delta, double omega0, double theta_dot, const IntegratorConfig& cfg = {}) {
    if (!(theta_dot > 0.0) || !std::isfinite(theta_dot))
        throw std::invalid_argument("linear_theta_oracle: theta_dot must be > 0 and finite");
    if (!(omega0 >= 0.0)) throw std::invalid_argument("linear_theta_oracle: omega0 must be >= 0");
    cfg.validate();

    const double duration = std::numbers::pi / (2.0 * theta_dot);
    const double rate = std::max({omega0, std::abs(delta), theta_dot});
    const std::size_t base_steps = steps_for(duration, cfg.step_for(rate));

    struct OracleRun {
        Vector3c state;
        ConvergenceInfo info;
        Populations populations() const { return {std::norm(state(0)), std::norm(state(1)), std::norm(state(2))}; }
    };

    auto hamiltonian = [&](double t) {
        const double th = theta_dot * t;
        Matrix3c h = Matrix3c::Zero();
        h(0, 1) = h(1, 0) = 0.5 * omega0 * std::sin(th);
        h(1, 2) = h(2, 1) = 0.5 * omega0 * std::cos(th);
        h(1, 1) = delta;
        return h;
    };
    const Complex minus_i(0.0, -1.0);
    auto apply = [minus_i](const Matrix3c& h, const Vector3c& psi) -> Vector3c { return minus_i * (h * psi); };
    auto noop = [](std::size_t, double, const Vector3c&) {};

    auto run = converge<OracleRun>(cfg, [&](int level) {
        const std::size_t steps = base_steps << level;
        OracleRun r{integrate_fixed(Vector3c(1.0, 0.0, 0.0), 0.0, duration, steps, hamiltonian, apply, noop), {}};
        r.info.steps = steps;
        return r;
    });
    if (!run.info.converged)
        throw std::runtime_error("linear_theta_oracle did not converge: residual " + std::to_string(run.info.residual));
    return std::norm(run.state(2));
}

}  // namespace holeburn
