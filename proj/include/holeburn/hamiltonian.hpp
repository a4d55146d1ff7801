// hamiltonian.hpp — rotating-frame Hamiltonian of the Λ system.

#pragma once

#include "holeburn/pulses.hpp"
#include "holeburn/types.hpp"

#include <cmath>
#include <stdexcept>

namespace holeburn {

/// H = Ω12/2 (|1⟩⟨2| + h.c.) + Ω23/2 (|2⟩⟨3| + h.c.) + (Δ - δ)|2⟩⟨2|.
///
/// With cross coupling enabled each field also drives the other optical arm,
/// detuned by the ground splitting ω13:
///   Ω23/2 (|1⟩⟨2| e^{-iω13 t} + h.c.) + Ω12/2 (|3⟩⟨2| e^{iω13 t} + h.c.).
/// The phases use the global simulation clock t.
inline Matrix3c build_hamiltonian(const SystemParams& params, double omega12, double omega23,
                                  double carrier_offset, double t) {
    if (!(omega12 >= 0.0) || !(omega23 >= 0.0))
        throw std::invalid_argument("Rabi amplitudes must be nonnegative");
    if (params.cross_coupling && !(params.omega13 > 0.0))
        throw std::invalid_argument("cross coupling requires omega13 > 0");

    Matrix3c h = Matrix3c::Zero();
    h(0, 1) = h(1, 0) = 0.5 * omega12;
    h(1, 2) = h(2, 1) = 0.5 * omega23;
    h(1, 1) = params.delta - carrier_offset;

    if (params.cross_coupling) {
        const Complex phase = std::polar(1.0, -params.omega13 * t);  // e^{-iω13 t}
        h(0, 1) += 0.5 * omega23 * phase;
        h(1, 0) += 0.5 * omega23 * std::conj(phase);
        h(2, 1) += 0.5 * omega12 * std::conj(phase);
        h(1, 2) += 0.5 * omega12 * phase;
    }
    return h;
}

/// Hamiltonian of a schedule at time t, in the frame of the given carrier offset.
inline Matrix3c schedule_hamiltonian(const PulseSchedule& schedule, const SystemParams& params, double t,
                                     double carrier_offset) {
    const auto amps = pulse_amplitudes(schedule, t);
    return build_hamiltonian(params, amps.omega12, amps.omega23, carrier_offset, t);
}

}  // namespace holeburn
