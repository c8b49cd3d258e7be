#include "base_pulse/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <thread>
#include <type_traits>
#include <variant>

#include "base_pulse/error.hpp"

namespace base_pulse {

namespace {

unsigned resolve_threads(unsigned requested, std::size_t work_items) {
    unsigned threads = requested;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("BASE_PULSE_THREADS")) {
            unsigned cap = 0;
            const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
            if (ec == std::errc{} && cap > 0) {
                threads = std::min(threads, cap);
            }
        }
    }
    return static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(work_items, 1)));
}

// Calls fn(i) for every i in [0, count). Each index is handled by exactly one
// worker, so per-index outputs are independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned requested_threads, Fn&& fn) {
    const unsigned threads = resolve_threads(requested_threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        workers.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                fn(i);
            }
        });
    }
}

}  // namespace

void OffsetGrid::validate() const {
    if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || !(omega_min < omega_max)) {
        throw InvalidArgument("offset grid requires omega_min < omega_max");
    }
    if (n_points < 2) {
        throw InvalidArgument("offset grid requires at least 2 points");
    }
}

double OffsetGrid::at(int i) const noexcept {
    const double last = n_points - 1;
    return ((last - i) * omega_min + i * omega_max) / last;
}

std::vector<double> OffsetGrid::points() const {
    validate();
    std::vector<double> pts(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        pts[static_cast<std::size_t>(i)] = at(i);
    }
    return pts;
}

Su2Rotation waveform_propagator(const Waveform& w, double omega) {
    Su2Rotation total;
    for (const auto& seg : w.segments) {
        total = compose(propagator_const(omega, seg.amplitude, seg.phase, seg.duration), total);
    }
    return total;
}

Su2Rotation sequence_propagator(const PulseSequence& seq, double omega) {
    Su2Rotation total;
    for (const auto& element : seq.elements) {
        const Su2Rotation step = std::visit(
            [omega](const auto& e) -> Su2Rotation {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, Shaped>) {
                    return waveform_propagator(e.waveform, omega);
                } else if constexpr (std::is_same_v<T, Delay>) {
                    return propagator_const(omega, 0.0, 0.0, e.duration);
                } else {
                    return rotation_x(std::numbers::pi);
                }
            },
            element);
        total = compose(step, total);
    }
    return total;
}

ExcitationProfile excitation_profile(const PulseSequence& seq, const OffsetGrid& grid,
                                     const BlochVector& initial, unsigned threads) {
    seq.validate();
    if (std::abs(initial.norm() - 1.0) > 1e-9) {
        throw InvalidArgument("initial Bloch vector must have unit norm");
    }

    ExcitationProfile profile;
    profile.offsets = grid.points();
    profile.bloch.resize(profile.offsets.size());
    profile.initial_state = initial;
    profile.sequence_name = seq.name;

    parallel_for(profile.offsets.size(), threads, [&](std::size_t i) {
        profile.bloch[i] = apply_to_bloch(sequence_propagator(seq, profile.offsets[i]), initial);
    });
    return profile;
}

std::vector<double> fourier_response(const SynthesisParams& params, const OffsetGrid& grid) {
    const auto u = fourier_coefficients(params);
    const double step = params.step();
    const auto offsets = grid.points();

    std::vector<double> response(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            sum += u[k] * std::cos(static_cast<double>(k) * offsets[i] * step);
        }
        response[i] = 2.0 * sum * step;
    }
    return response;
}

InversionReport inversion_report(const Waveform& chirp, const OffsetGrid& grid, unsigned threads) {
    chirp.validate();
    InversionReport report;
    report.offsets = grid.points();
    const std::size_t count = report.offsets.size();
    report.efficiency.resize(count);
    report.euler_alpha.resize(count);
    report.euler_beta.resize(count);

    parallel_for(count, threads, [&](std::size_t i) {
        const Su2Rotation r = waveform_propagator(chirp, report.offsets[i]);
        report.efficiency[i] = std::clamp(std::norm(r.b()), 0.0, 1.0);
        const EulerZxz e = euler_zxz(r);
        report.euler_alpha[i] = e.alpha;
        report.euler_beta[i] = e.beta;
    });
    return report;
}

double adiabaticity_ratio(const ChirpParams& chirp) {
    chirp.validate();
    return chirp.sweep_rate() / (chirp.peak_amplitude * chirp.peak_amplitude);
}

}  // namespace base_pulse
