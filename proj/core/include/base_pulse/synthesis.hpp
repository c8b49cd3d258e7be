#pragma once

// Waveform construction for band-selective excitation: Fourier-series
// excitation pulse, linear chirp, and the double-sweep composite sequences.
//
// Everything here is in normalized units: offsets and RF amplitudes are
// angular frequencies with the band edge of interest inside [-1, 1], and time
// is in the matching reciprocal unit. PhysicalScale converts to SI.

#include <numbers>
#include <string>
#include <variant>
#include <vector>

namespace base_pulse {

struct SynthesisParams {
    double band = 0.2;  // B, half-width of the excited band
    int n = 10;         // sample step is pi / n
    int m = 20;         // half-duration is m * pi
    double target_angle = std::numbers::pi / 2.0;

    void validate() const;

    [[nodiscard]] double step() const noexcept { return std::numbers::pi / n; }
    // K = m * n samples on each side of the center sample.
    [[nodiscard]] int half_samples() const noexcept { return m * n; }
};

struct PulseSegment {
    double duration = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;  // radians, [0, 2*pi)
};

struct Waveform {
    std::string name;
    std::vector<PulseSegment> segments;

    // Throws InvalidArgument on an empty waveform or a bad segment.
    void validate() const;
    [[nodiscard]] double total_duration() const noexcept;
    [[nodiscard]] double peak_amplitude() const noexcept;
};

struct ChirpParams {
    double freq_start = -1.5;
    double freq_end = 1.5;
    double duration = 150.0;
    double peak_amplitude = 0.5;
    double ramp_fraction = 1.0 / 6.0;
    int n_segments = 1500;

    void validate() const;

    // |freq_end - freq_start| / duration.
    [[nodiscard]] double sweep_rate() const noexcept;
};

struct Shaped {
    Waveform waveform;
};

struct Delay {
    double duration = 0.0;
};

// Instantaneous exp(-i*pi*Ix), independent of offset.
struct IdealInversion {};

using SequenceElement = std::variant<Shaped, Delay, IdealInversion>;

struct PulseSequence {
    std::string name;
    std::vector<SequenceElement> elements;

    void validate() const;
    // Ideal inversions take no time.
    [[nodiscard]] double total_duration() const noexcept;
};

enum class Inversion { ideal, chirp };

// Normalized omega = 1 corresponds to nu_ref Hz of offset.
struct PhysicalScale {
    double nu_ref = 20000.0;

    void validate() const;
    [[nodiscard]] double seconds(double normalized_time) const noexcept;
    [[nodiscard]] double hertz(double normalized_frequency) const noexcept;
};

// u_0 .. u_K with K = m * n. For target_angle = pi/2: u_0 = B/4 and
// u_k = sin(k*B*pi/n) / (2*k*pi/n); other angles scale linearly.
[[nodiscard]] std::vector<double> fourier_coefficients(const SynthesisParams& params);

// 2K + 1 segments of duration pi/n. The center segment carries 2*u_0, the
// others u_|k|; negative values are written as |u| with phase pi.
[[nodiscard]] Waveform build_excitation_waveform(const SynthesisParams& params);

// Linear frequency sweep expressed as phase modulation, with a half-sine
// amplitude ramp over the first and last ramp_fraction of the duration.
// Throws DiscretizationError when the per-segment frequency step reaches 1%
// of the peak amplitude.
[[nodiscard]] Waveform build_chirp(const ChirpParams& params);

// Amplitude envelope of the chirp at fractional time s in [0, 1].
[[nodiscard]] double chirp_envelope(double s, double ramp_fraction) noexcept;

// [excitation, inversion, Delay(T/2), inversion]
[[nodiscard]] PulseSequence assemble_base_excitation(const SynthesisParams& params,
                                                     const ChirpParams& chirp,
                                                     Inversion inversion);

// [inversion, Delay(T/2), inversion, excitation, inversion, Delay(T/2), inversion]
[[nodiscard]] PulseSequence assemble_base_rotation(const SynthesisParams& params,
                                                   const ChirpParams& chirp,
                                                   Inversion inversion);

[[nodiscard]] double total_duration(const PulseSequence& seq, const PhysicalScale& scale);

// Wraps to [0, 2*pi).
[[nodiscard]] double wrap_phase(double phase) noexcept;

}  // namespace base_pulse
