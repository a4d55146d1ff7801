// protocols.hpp — named pulse sequences: STIRAP hole burning and
// reversed-STIRAP qubit isolation trains.

#pragma once

#include "holeburn/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace holeburn {

inline constexpr double kDefaultDelay = std::numbers::sqrt2;

/// Default peak-to-peak gap between adjacent segments. At 10σ the truncation
/// windows of neighbouring segments touch without overlapping.
inline constexpr double kDefaultSegmentGap = 2.0 * kTruncationWidths;

struct UnburnSpec {
    double omega_max = 5.0;
    double carrier_offset = 0.0;

    bool operator==(const UnburnSpec&) const = default;
};

/// A burn pair (τ > 0) optionally followed by weaker reversed pairs (τ < 0).
struct ProtocolSpec {
    double burn_omega = 10.0;
    double burn_tau = kDefaultDelay;
    std::vector<UnburnSpec> unburn;
    double unburn_tau = -kDefaultDelay;
    double segment_gap = kDefaultSegmentGap;

    bool operator==(const ProtocolSpec&) const = default;

    void validate() const {
        if (!(burn_omega > 0.0) || !std::isfinite(burn_omega))
            throw std::invalid_argument("burn omega_max must be > 0");
        if (!(burn_tau > 0.0)) throw std::invalid_argument("burn tau must be > 0 (STIRAP ordering)");
        if (!unburn.empty() && !(unburn_tau < 0.0))
            throw std::invalid_argument("unburn tau must be < 0 (reversed ordering)");
        if (!(segment_gap >= kMinSegmentGap))
            throw std::invalid_argument("segment_gap must be >= " + std::to_string(kMinSegmentGap));
        for (std::size_t i = 0; i < unburn.size(); ++i) {
            const auto& u = unburn[i];
            if (!(u.omega_max > 0.0))
                throw std::invalid_argument("unburn[" + std::to_string(i) + "]: omega_max must be > 0");
            if (!(u.omega_max < burn_omega))
                throw std::invalid_argument("unburn[" + std::to_string(i) +
                                            "]: omega_max must be below the burn omega_max");
            if (!std::isfinite(u.carrier_offset))
                throw std::invalid_argument("unburn[" + std::to_string(i) + "]: offset must be finite");
        }
    }
};

/// Single pulse pair centred at t = 0 with zero carrier offset.
inline PulseSchedule make_stirap(double omega_max, double tau) {
    if (!(omega_max > 0.0)) throw std::invalid_argument("make_stirap: omega_max must be > 0");
    return PulseSchedule({Segment{PulsePair{omega_max, 1.0, tau, 0.0}, 0.0}});
}

namespace detail {
inline PulseSchedule build_train(const ProtocolSpec& spec) {
    std::vector<Segment> segs;
    segs.push_back({PulsePair{spec.burn_omega, 1.0, spec.burn_tau, 0.0}, 0.0});
    for (const auto& u : spec.unburn) {
        const double center = segs.back().pair.last_peak() + spec.segment_gap + 0.5 * std::abs(spec.unburn_tau);
        segs.push_back({PulsePair{u.omega_max, 1.0, spec.unburn_tau, center}, u.carrier_offset});
    }
    return PulseSchedule(std::move(segs));
}
}  // namespace detail

/// Burn pair followed by one reversed pair per unburn entry, in list order.
/// Each unburn segment is placed `segment_gap` after the last peak of the
/// previous segment.
inline PulseSchedule make_qubit_isolation(double burn_omega, const std::vector<UnburnSpec>& unburn,
                                          double segment_gap = kDefaultSegmentGap,
                                          double burn_tau = kDefaultDelay, double unburn_tau = -kDefaultDelay) {
    const ProtocolSpec spec{burn_omega, burn_tau, unburn, unburn_tau, segment_gap};
    spec.validate();
    return detail::build_train(spec);
}

inline PulseSchedule make_schedule(const ProtocolSpec& spec) {
    return make_qubit_isolation(spec.burn_omega, spec.unburn, spec.segment_gap, spec.burn_tau, spec.unburn_tau);
}

struct MixingAngle {
    double theta = 0.0;
    double theta_dot = 0.0;
};

/// tan θ = Ω12/Ω23 for the dominant segment, with the closed-form rate
/// θ̇ = (τ/2σ²) sech((t - t_c)τ/σ²) of a Gaussian pair.
inline MixingAngle mixing_angle(const PulseSchedule& schedule, double t) {
    const auto& p = schedule.segments().at(schedule.dominant_segment(t)).pair;
    const double o12 = p.gaussian(t, p.pump_peak());
    const double o23 = p.gaussian(t, p.stokes_peak());
    if (o12 <= 1e-300 && o23 <= 1e-300)
        throw std::domain_error("mixing angle undefined: both amplitudes underflow at t = " + std::to_string(t));
    const double s2 = p.sigma * p.sigma;
    const double x = (t - p.t_center) * p.tau / s2;
    return {std::atan2(o12, o23), 0.5 * p.tau / s2 / std::cosh(x)};
}

}  // namespace holeburn
