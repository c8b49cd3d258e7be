#pragma once

// Exact evolution of a single uncoupled spin-1/2 through a PulseSequence.
// Each piecewise-constant segment is propagated in closed form, so there is
// no integrator tolerance anywhere in the simulation path.

#include <string>
#include <vector>

#include "base_pulse/su2.hpp"
#include "base_pulse/synthesis.hpp"

namespace base_pulse {

struct OffsetGrid {
    double omega_min = -1.0;
    double omega_max = 1.0;
    int n_points = 801;

    void validate() const;
    // Uniform and inclusive of both endpoints; a grid symmetric about zero
    // yields exactly negated point pairs.
    [[nodiscard]] double at(int i) const noexcept;
    [[nodiscard]] std::vector<double> points() const;
};

struct ExcitationProfile {
    std::vector<double> offsets;
    std::vector<BlochVector> bloch;
    BlochVector initial_state;
    std::string sequence_name;
};

struct InversionReport {
    std::vector<double> offsets;
    std::vector<double> efficiency;  // probability of z -> -z
    std::vector<double> euler_alpha;
    std::vector<double> euler_beta;
};

[[nodiscard]] Su2Rotation waveform_propagator(const Waveform& w, double omega);

// Time-ordered product of element propagators at offset `omega`.
[[nodiscard]] Su2Rotation sequence_propagator(const PulseSequence& seq, double omega);

// Offsets are evaluated on up to `threads` workers; 0 picks the
// BASE_PULSE_THREADS environment cap or the hardware concurrency. Results do
// not depend on the thread count.
[[nodiscard]] ExcitationProfile excitation_profile(const PulseSequence& seq, const OffsetGrid& grid,
                                                   const BlochVector& initial,
                                                   unsigned threads = 0);

// 2 * sum_{k=0}^{K} u_k cos(k*omega*pi/n) * pi/n, i.e. the first-order flip
// angle of the excitation waveform as a function of offset.
[[nodiscard]] std::vector<double> fourier_response(const SynthesisParams& params,
                                                   const OffsetGrid& grid);

[[nodiscard]] InversionReport inversion_report(const Waveform& chirp, const OffsetGrid& grid,
                                               unsigned threads = 0);

// sweep_rate / peak_amplitude^2; must be << 1 for reliable inversion.
[[nodiscard]] double adiabaticity_ratio(const ChirpParams& chirp);

}  // namespace base_pulse
