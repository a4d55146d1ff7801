// pulses.hpp — Gaussian pulse pairs and time-ordered pulse schedules.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace holeburn {

/// Each Gaussian is cut to zero further than this many widths from its peak.
inline constexpr double kTruncationWidths = 5.0;

/// Minimum distance between the nearest pulse peaks of adjacent segments.
inline constexpr double kMinSegmentGap = 6.0;

/// A pump/Stokes pair of Gaussians with equal amplitude and width.
///
/// Ω12 peaks at t_center + τ/2 and Ω23 at t_center - τ/2, so τ > 0 is the
/// counterintuitive (STIRAP) order and τ < 0 the reversed order.
struct PulsePair {
    double omega_max = 1.0;
    double sigma = 1.0;
    double tau = 0.0;
    double t_center = 0.0;

    void validate() const {
        if (!(omega_max > 0.0) || !std::isfinite(omega_max))
            throw std::invalid_argument("pulse amplitude omega_max must be > 0");
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("pulse width sigma must be > 0");
        if (!std::isfinite(tau) || !std::isfinite(t_center))
            throw std::invalid_argument("pulse delay and center must be finite");
    }

    double pump_peak() const { return t_center + 0.5 * tau; }
    double stokes_peak() const { return t_center - 0.5 * tau; }
    double first_peak() const { return std::min(pump_peak(), stokes_peak()); }
    double last_peak() const { return std::max(pump_peak(), stokes_peak()); }

    double window_start() const { return first_peak() - kTruncationWidths * sigma; }
    double window_end() const { return last_peak() + kTruncationWidths * sigma; }

    /// Untruncated envelope of a single Gaussian peaking at `peak`.
    double gaussian(double t, double peak) const {
        const double x = (t - peak) / sigma;
        return omega_max * std::exp(-0.5 * x * x);
    }

    double truncated(double t, double peak) const {
        if (std::abs(t - peak) > kTruncationWidths * sigma) return 0.0;
        return gaussian(t, peak);
    }

    double omega12(double t) const { return truncated(t, pump_peak()); }
    double omega23(double t) const { return truncated(t, stokes_peak()); }
};

/// One pulse pair plus the carrier offset δₙ of its drive; the segment sees
/// an effective detuning Δ - δₙ.
struct Segment {
    PulsePair pair;
    double carrier_offset = 0.0;
};

struct PulseAmplitudes {
    double omega12 = 0.0;
    double omega23 = 0.0;
    double active_offset = 0.0;
    std::size_t active_segment = 0;
};

/// Time-ordered list of segments. Adjacent segments must keep their nearest
/// pulse peaks at least kMinSegmentGap·σ apart.
class PulseSchedule {
public:
    PulseSchedule() = default;

    explicit PulseSchedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            segments_[i].pair.validate();
            if (!std::isfinite(segments_[i].carrier_offset))
                throw std::invalid_argument("segment " + std::to_string(i) + ": carrier offset must be finite");
            if (i == 0) continue;
            const auto& prev = segments_[i - 1].pair;
            const auto& cur = segments_[i].pair;
            const double gap = cur.first_peak() - prev.last_peak();
            const double need = kMinSegmentGap * std::max(prev.sigma, cur.sigma);
            if (gap < need * (1.0 - 1e-12))
                throw std::invalid_argument("segment " + std::to_string(i) + " overlaps segment " +
                                            std::to_string(i - 1) + ": peak separation " +
                                            std::to_string(gap) + " < " + std::to_string(need));
        }
    }

    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    std::size_t size() const { return segments_.size(); }

    double start() const { return empty() ? 0.0 : segments_.front().pair.window_start(); }
    double end() const { return empty() ? 0.0 : segments_.back().pair.window_end(); }

    /// Segment whose peak span [first_peak, last_peak] lies closest to t.
    std::size_t dominant_segment(double t) const {
        if (empty()) throw std::logic_error("empty pulse schedule has no dominant segment");
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const auto& p = segments_[i].pair;
            const double d = std::max({p.first_peak() - t, t - p.last_peak(), 0.0});
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

private:
    std::vector<Segment> segments_;
};

/// Summed (truncated) envelopes of every segment at t, with the carrier
/// offset of the dominant segment.
inline PulseAmplitudes pulse_amplitudes(const PulseSchedule& schedule, double t) {
    PulseAmplitudes out;
    if (schedule.empty()) return out;
    for (const auto& seg : schedule.segments()) {
        out.omega12 += seg.pair.omega12(t);
        out.omega23 += seg.pair.omega23(t);
    }
    out.active_segment = schedule.dominant_segment(t);
    out.active_offset = schedule.segments()[out.active_segment].carrier_offset;
    return out;
}

/// Time slice integrated in the rotating frame of one segment.
struct FrameInterval {
    double start = 0.0;
    double end = 0.0;
    std::size_t segment = 0;
    double carrier_offset = 0.0;
    double amplitude_bound = 0.0;  // largest single envelope reachable inside the slice
};

/// Splits the schedule into per-segment frames. A segment's frame is its
/// truncation window, cut at the midpoint of the gap to a neighbour when the
/// windows would overlap. Gaps between windows are skipped.
inline std::vector<FrameInterval> frame_intervals(const PulseSchedule& schedule) {
    const auto& segs = schedule.segments();
    std::vector<FrameInterval> out;
    out.reserve(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& p = segs[i].pair;
        FrameInterval fi;
        fi.segment = i;
        fi.carrier_offset = segs[i].carrier_offset;
        fi.start = p.window_start();
        fi.end = p.window_end();
        if (i > 0) {
            const double split = 0.5 * (segs[i - 1].pair.last_peak() + p.first_peak());
            fi.start = std::max(fi.start, split);
        }
        if (i + 1 < segs.size()) {
            const double split = 0.5 * (p.last_peak() + segs[i + 1].pair.first_peak());
            fi.end = std::min(fi.end, split);
        }
        for (std::size_t j = 0; j < segs.size(); ++j) {
            const auto& q = segs[j].pair;
            const double d = std::max({q.first_peak() - fi.end, fi.start - q.last_peak(), 0.0});
            if (d > kTruncationWidths * q.sigma) continue;
            const double x = d / q.sigma;
            fi.amplitude_bound += q.omega_max * std::exp(-0.5 * x * x);
        }
        out.push_back(fi);
    }
    return out;
}

}  // namespace holeburn
