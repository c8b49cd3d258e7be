#include "base_pulse/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "base_pulse/error.hpp"

namespace base_pulse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxHalfSamples = 10'000'000;

PulseSegment signed_segment(double duration, double value) {
    return value < 0.0 ? PulseSegment{duration, -value, kPi} : PulseSegment{duration, value, 0.0};
}

SequenceElement inversion_element(Inversion inversion, const ChirpParams& chirp) {
    if (inversion == Inversion::ideal) {
        return IdealInversion{};
    }
    return Shaped{build_chirp(chirp)};
}

}  // namespace

void SynthesisParams::validate() const {
    if (!(band > 0.0 && band < 1.0)) {
        throw InvalidArgument("band must lie in (0, 1)");
    }
    if (n < 1) {
        throw InvalidArgument("n must be a positive integer");
    }
    if (m < 1) {
        throw InvalidArgument("m must be a positive integer");
    }
    if (static_cast<long long>(m) * n > kMaxHalfSamples) {
        throw InvalidArgument("m * n exceeds " + std::to_string(kMaxHalfSamples) + " samples");
    }
    if (!(target_angle > 0.0 && target_angle <= kPi)) {
        throw InvalidArgument("target angle must lie in (0, pi]");
    }
}

void Waveform::validate() const {
    if (segments.empty()) {
        throw InvalidArgument("waveform '" + name + "' has no segments");
    }
    for (const auto& seg : segments) {
        if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
            throw InvalidArgument("waveform '" + name + "': segment duration must be positive");
        }
        if (!(seg.amplitude >= 0.0) || !std::isfinite(seg.amplitude)) {
            throw InvalidArgument("waveform '" + name + "': segment amplitude must be non-negative");
        }
        if (!(seg.phase >= 0.0 && seg.phase < kTwoPi)) {
            throw InvalidArgument("waveform '" + name + "': segment phase must lie in [0, 2*pi)");
        }
    }
}

double Waveform::total_duration() const noexcept {
    double total = 0.0;
    for (const auto& seg : segments) {
        total += seg.duration;
    }
    return total;
}

double Waveform::peak_amplitude() const noexcept {
    double peak = 0.0;
    for (const auto& seg : segments) {
        peak = std::max(peak, seg.amplitude);
    }
    return peak;
}

void ChirpParams::validate() const {
    if (!std::isfinite(freq_start) || !std::isfinite(freq_end)) {
        throw InvalidArgument("chirp frequencies must be finite");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw InvalidArgument("chirp duration must be positive");
    }
    if (!(peak_amplitude > 0.0) || !std::isfinite(peak_amplitude)) {
        throw InvalidArgument("chirp peak amplitude must be positive");
    }
    if (!(ramp_fraction >= 0.0 && ramp_fraction < 0.5)) {
        throw InvalidArgument("chirp ramp fraction must lie in [0, 0.5)");
    }
    if (n_segments < 1) {
        throw InvalidArgument("chirp segment count must be positive");
    }
    if (!(sweep_rate() < peak_amplitude * peak_amplitude)) {
        throw InvalidArgument("chirp sweep rate must be below peak_amplitude^2 (adiabatic regime)");
    }
}

double ChirpParams::sweep_rate() const noexcept { return std::abs(freq_end - freq_start) / duration; }

void PulseSequence::validate() const {
    if (elements.empty()) {
        throw InvalidArgument("sequence '" + name + "' has no elements");
    }
    for (const auto& element : elements) {
        if (const auto* shaped = std::get_if<Shaped>(&element)) {
            shaped->waveform.validate();
        } else if (const auto* delay = std::get_if<Delay>(&element)) {
            if (!(delay->duration >= 0.0) || !std::isfinite(delay->duration)) {
                throw InvalidArgument("sequence '" + name + "': delay must be non-negative");
            }
        }
    }
}

double PulseSequence::total_duration() const noexcept {
    double total = 0.0;
    for (const auto& element : elements) {
        if (const auto* shaped = std::get_if<Shaped>(&element)) {
            total += shaped->waveform.total_duration();
        } else if (const auto* delay = std::get_if<Delay>(&element)) {
            total += delay->duration;
        }
    }
    return total;
}

void PhysicalScale::validate() const {
    if (!(nu_ref > 0.0) || !std::isfinite(nu_ref)) {
        throw InvalidArgument("reference frequency must be positive");
    }
}

double PhysicalScale::seconds(double normalized_time) const noexcept {
    return normalized_time / (kTwoPi * nu_ref);
}

double PhysicalScale::hertz(double normalized_frequency) const noexcept {
    return normalized_frequency * nu_ref;
}

double wrap_phase(double phase) noexcept {
    double wrapped = std::fmod(phase, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    // fmod of a tiny negative number can round up to exactly 2*pi.
    return wrapped >= kTwoPi ? 0.0 : wrapped;
}

std::vector<double> fourier_coefficients(const SynthesisParams& params) {
    params.validate();
    const int K = params.half_samples();
    const double scale = params.target_angle / (kPi / 2.0);
    const double step = params.step();

    std::vector<double> u(static_cast<std::size_t>(K) + 1);
    u[0] = params.band / 4.0 * scale;
    for (int k = 1; k <= K; ++k) {
        u[k] = std::sin(k * params.band * step) / (2.0 * k * step) * scale;
    }
    return u;
}

Waveform build_excitation_waveform(const SynthesisParams& params) {
    const auto u = fourier_coefficients(params);
    const int K = params.half_samples();
    const double step = params.step();

    Waveform w;
    w.name = "base_excitation";
    w.segments.reserve(2 * static_cast<std::size_t>(K) + 1);
    for (int k = -K; k <= K; ++k) {
        const double value = k == 0 ? 2.0 * u[0] : u[static_cast<std::size_t>(std::abs(k))];
        w.segments.push_back(signed_segment(step, value));
    }
    return w;
}

double chirp_envelope(double s, double ramp_fraction) noexcept {
    if (ramp_fraction <= 0.0) {
        return 1.0;
    }
    if (s < ramp_fraction) {
        return std::sin(0.5 * kPi * std::max(s, 0.0) / ramp_fraction);
    }
    if (s > 1.0 - ramp_fraction) {
        return std::sin(0.5 * kPi * std::max(1.0 - s, 0.0) / ramp_fraction);
    }
    return 1.0;
}

Waveform build_chirp(const ChirpParams& params) {
    params.validate();
    const double span = params.freq_end - params.freq_start;
    if (!(std::abs(span) / params.n_segments < 0.01 * params.peak_amplitude)) {
        throw DiscretizationError("chirp: " + std::to_string(params.n_segments) +
                                  " segments give a frequency step of at least 1% of the peak "
                                  "amplitude; increase the segment count");
    }
    const double dt = params.duration / params.n_segments;
    const double rate = span / params.duration;

    Waveform w;
    w.name = "chirp";
    w.segments.reserve(static_cast<std::size_t>(params.n_segments));
    for (int i = 0; i < params.n_segments; ++i) {
        const double t = (i + 0.5) * dt;
        const double phase = params.freq_start * t + 0.5 * rate * t * t;
        const double amplitude =
            params.peak_amplitude * chirp_envelope(t / params.duration, params.ramp_fraction);
        w.segments.push_back({dt, amplitude, wrap_phase(phase)});
    }
    return w;
}

PulseSequence assemble_base_excitation(const SynthesisParams& params, const ChirpParams& chirp,
                                       Inversion inversion) {
    Waveform excitation = build_excitation_waveform(params);
    const double half = excitation.total_duration() / 2.0;
    const SequenceElement inv = inversion_element(inversion, chirp);

    PulseSequence seq;
    seq.name = inversion == Inversion::ideal ? "base_excitation_ideal" : "base_excitation";
    seq.elements = {Shaped{std::move(excitation)}, inv, Delay{half}, inv};
    return seq;
}

PulseSequence assemble_base_rotation(const SynthesisParams& params, const ChirpParams& chirp,
                                     Inversion inversion) {
    Waveform excitation = build_excitation_waveform(params);
    const double half = excitation.total_duration() / 2.0;
    const SequenceElement inv = inversion_element(inversion, chirp);

    PulseSequence seq;
    seq.name = inversion == Inversion::ideal ? "base_rotation_ideal" : "base_rotation";
    seq.elements = {inv, Delay{half}, inv, Shaped{std::move(excitation)}, inv, Delay{half}, inv};
    return seq;
}

double total_duration(const PulseSequence& seq, const PhysicalScale& scale) {
    scale.validate();
    return scale.seconds(seq.total_duration());
}

}  // namespace base_pulse
