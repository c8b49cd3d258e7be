#include "base_pulse/verification.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "base_pulse/io.hpp"
#include "base_pulse/simulator.hpp"
#include "base_pulse/su2.hpp"
#include "base_pulse/synthesis.hpp"

namespace base_pulse {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string describe(const char* what, double value, const char* cmp, double bound) {
    std::ostringstream ss;
    ss.precision(3);
    ss << what << " = " << value << " (" << cmp << ' ' << bound << ')';
    return ss.str();
}

Outcome at_most(const char* what, double value, double bound) {
    return {value <= bound, describe(what, value, "<=", bound)};
}

Su2Rotation random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    return Su2Rotation::from_quaternion(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
}

BlochVector random_bloch(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    const double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
}

// --- su2 -------------------------------------------------------------------

Outcome check_unitarity() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    double worst = 0.0;
    Su2Rotation acc;
    for (int i = 0; i < 10000; ++i) {
        const Su2Rotation step = propagator_const(uni(rng), std::abs(uni(rng)), uni(rng) + 2.0,
                                                  std::abs(uni(rng)) * 5.0);
        acc = compose(step, acc);
        worst = std::max({worst, std::abs(step.norm() - 1.0), std::abs(acc.norm() - 1.0)});
        worst = std::max(worst, std::abs(random_rotation(rng).norm() - 1.0));
    }
    return at_most("max |norm - 1|", worst, 1e-12);
}

Outcome check_refinement() {
    const double omega = 0.3, amp = 0.4, phase = 1.1, duration = 2.7;
    const Su2Rotation whole = propagator_const(omega, amp, phase, duration);
    double worst = 0.0;
    for (int n : {2, 7, 100, 1000}) {
        const Su2Rotation piece = propagator_const(omega, amp, phase, duration / n);
        Su2Rotation acc;
        for (int i = 0; i < n; ++i) {
            acc = compose(piece, acc);
        }
        worst = std::max(worst, rotation_distance(acc, whole));
    }
    return at_most("max refinement distance", worst, 1e-9);
}

Outcome check_euler_round_trip() {
    std::mt19937_64 rng(12);
    double worst = 0.0;
    bool gamma_ok = true;
    for (int i = 0; i < 1000; ++i) {
        const Su2Rotation r = random_rotation(rng);
        const EulerZxz e = euler_zxz(r);
        gamma_ok = gamma_ok && e.gamma >= 0.0 && e.gamma <= kPi;
        worst = std::max(worst, rotation_distance(from_euler_zxz(e), r));
    }
    for (const Su2Rotation& r : {Su2Rotation::identity(), rotation_x(kPi), rotation_z(0.7),
                                 compose(rotation_z(0.3), rotation_x(kPi))}) {
        const EulerZxz e = euler_zxz(r);
        gamma_ok = gamma_ok && e.gamma >= 0.0 && e.gamma <= kPi;
        worst = std::max(worst, rotation_distance(from_euler_zxz(e), r));
    }
    Outcome out = at_most("max recomposition distance", worst, 1e-10);
    if (!gamma_ok) {
        return {false, "center angle outside [0, pi]"};
    }
    return out;
}

Outcome check_bloch_consistency() {
    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Su2Rotation r = random_rotation(rng);
        const BlochVector v = random_bloch(rng);
        const BlochVector direct = apply_to_bloch(r, v);
        const BlochVector via = to_bloch(apply(r, spinor_from_bloch(v)));
        worst = std::max({worst, std::abs(direct.mx - via.mx), std::abs(direct.my - via.my),
                          std::abs(direct.mz - via.mz), std::abs(direct.norm() - 1.0)});
    }
    return at_most("max spinor/Bloch disagreement", worst, 1e-10);
}

Outcome check_sign_convention() {
    // On-resonance x-phase pulse of flip angle pi/2.
    const BlochVector v = apply_to_bloch(propagator_const(0.0, kPi / 2.0, 0.0, 1.0),
                                         BlochVector::plus_z());
    const double err = std::max({std::abs(v.mx), std::abs(v.my + 1.0), std::abs(v.mz)});
    return at_most("deviation from -y", err, 1e-12);
}

// --- synthesis -------------------------------------------------------------

Outcome check_coefficient_formula() {
    double worst = 0.0;
    for (double band : {0.05, 0.1, 0.2, 0.4, 0.9}) {
        for (int n : {1, 5, 10, 32}) {
            const SynthesisParams p{band, n, 3};
            const auto u = fourier_coefficients(p);
            worst = std::max(worst, std::abs(4.0 * u[0] - band));
            for (std::size_t k = 1; k < u.size(); ++k) {
                const double lhs = u[k] * (2.0 * static_cast<double>(k) * kPi / n);
                worst = std::max(worst, std::abs(lhs - std::sin(static_cast<double>(k) * band * kPi / n)));
            }
            const double x = band * kPi / n;
            if (std::abs(u[1] - band / 2.0) > x * x * band / 12.0) {
                return {false, "small-k limit violated"};
            }
        }
    }
    return at_most("max coefficient formula residual", worst, 1e-15);
}

Outcome check_waveform_symmetry() {
    for (double band : {0.1, 0.2, 0.4}) {
        const Waveform w = build_excitation_waveform({band, 10, 20});
        const std::size_t n = w.segments.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = w.segments[i];
            const auto& b = w.segments[n - 1 - i];
            if (a.amplitude != b.amplitude || a.phase != b.phase || a.duration != b.duration) {
                return {false, "segment " + std::to_string(i) + " differs from its mirror"};
            }
        }
    }
    return {true, "exact mirror symmetry for B in {0.1, 0.2, 0.4}"};
}

Outcome check_partial_sum_equivalence() {
    const SynthesisParams params{0.2, 10, 20};
    const Waveform w = build_excitation_waveform(params);
    const OffsetGrid grid{-1.0, 1.0, 1001};
    const auto series = fourier_response(params, grid);
    const double half = w.total_duration() / 2.0;
    double worst = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double omega = grid.at(i);
        Complex sum{0.0, 0.0};
        double t = 0.0;
        for (const auto& seg : w.segments) {
            const double mid = t + seg.duration / 2.0;
            sum += std::polar(seg.amplitude, -seg.phase) * std::polar(1.0, omega * (mid - half)) *
                   seg.duration;
            t += seg.duration;
        }
        worst = std::max({worst, std::abs(sum.real() - series[static_cast<std::size_t>(i)]),
                          std::abs(sum.imag())});
    }
    return at_most("max Riemann vs cosine-series difference", worst, 1e-10);
}

Outcome check_chirp_phase_continuity() {
    const ChirpParams c;
    const Waveform w = build_chirp(c);
    const double dt = c.duration / c.n_segments;
    const double rate = (c.freq_end - c.freq_start) / c.duration;
    double worst = 0.0;
    for (std::size_t i = 1; i < w.segments.size(); ++i) {
        const double boundary = static_cast<double>(i) * dt;
        const double expected = dt * (c.freq_start + rate * boundary);
        const double jump = wrap_phase(w.segments[i].phase - w.segments[i - 1].phase - expected + kPi) - kPi;
        worst = std::max(worst, std::abs(jump));
    }
    return at_most("max unwrapped phase jump", worst, 1e-9);
}

Outcome check_adiabaticity() {
    const double ratio = adiabaticity_ratio(ChirpParams{});
    return {std::abs(ratio - 0.08) < 1e-15 && ratio < 1.0, describe("ratio", ratio, "==", 0.08)};
}

Outcome check_durations() {
    const PhysicalScale scale;
    const SynthesisParams params;
    const ChirpParams chirp;
    const double exc = total_duration(assemble_base_excitation(params, chirp, Inversion::chirp), scale) * 1e3;
    const double rot = total_duration(assemble_base_rotation(params, chirp, Inversion::chirp), scale) * 1e3;
    std::ostringstream ss;
    ss.precision(5);
    ss << "excitation " << exc << " ms, rotation " << rot << " ms";
    return {std::abs(exc - 3.89) <= 0.01 && std::abs(rot - 6.77) <= 0.01, ss.str()};
}

// --- simulator -------------------------------------------------------------

Outcome check_refocusing_identity() {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const double half = build_excitation_waveform({}).total_duration() / 2.0;
    const OffsetGrid grid{-1.0, 1.0, 11};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Su2Rotation theta = from_euler_zxz({angle(rng), kPi, angle(rng)});
        for (int i = 0; i < grid.n_points; ++i) {
            const double omega = grid.at(i);
            const Su2Rotation lhs =
                compose(theta, compose(propagator_const(omega, 0.0, 0.0, half), theta));
            worst = std::max(worst, rotation_distance(lhs, rotation_z(-omega * half)));
        }
    }
    return at_most("max refocusing distance", worst, 1e-10);
}

Outcome check_first_order_validity() {
    SynthesisParams params{0.2, 10, 20, kPi / 20.0};
    const Waveform w = build_excitation_waveform(params);
    const OffsetGrid grid{-params.band, params.band, 41};
    const auto predicted = fourier_response(params, grid);
    double worst = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double exact = std::abs(waveform_propagator(w, grid.at(i)).b());
        const double first_order = std::abs(predicted[static_cast<std::size_t>(i)]) / 2.0;
        worst = std::max(worst, std::abs(exact - first_order) / first_order);
    }
    return at_most("max relative off-diagonal error", worst, 0.01);
}

Outcome check_profile_norms_and_consistency() {
    const SynthesisParams params;
    const ChirpParams chirp;
    const auto exc = assemble_base_excitation(params, chirp, Inversion::ideal);
    const auto rot = assemble_base_rotation(params, chirp, Inversion::ideal);
    const OffsetGrid band{-0.8 * params.band, 0.8 * params.band, 33};
    const auto pe = excitation_profile(exc, band, BlochVector::plus_z());
    const auto pr = excitation_profile(rot, band, BlochVector::plus_z());
    double norm_err = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < pe.bloch.size(); ++i) {
        norm_err = std::max({norm_err, std::abs(pe.bloch[i].norm() - 1.0), std::abs(pr.bloch[i].norm() - 1.0)});
        diff = std::max(diff, std::abs(pe.bloch[i].my - pr.bloch[i].my));
    }
    if (norm_err > 1e-9) {
        return {false, describe("Bloch norm error", norm_err, "<=", 1e-9)};
    }
    return at_most("max in-band |my(excitation) - my(rotation)|", diff, 0.02);
}

Outcome check_determinism() {
    const auto seq = assemble_base_excitation({}, {}, Inversion::chirp);
    const OffsetGrid grid{-1.0, 1.0, 24};
    const auto serial = excitation_profile(seq, grid, BlochVector::plus_z(), 1);
    const auto threaded = excitation_profile(seq, grid, BlochVector::plus_z(), 4);
    for (std::size_t i = 0; i < serial.bloch.size(); ++i) {
        const auto& a = serial.bloch[i];
        const auto& b = threaded.bloch[i];
        if (a.mx != b.mx || a.my != b.my || a.mz != b.mz) {
            return {false, "profiles differ at index " + std::to_string(i)};
        }
    }
    return {true, "1-thread and 4-thread profiles bit-identical"};
}

Outcome check_grid_evenness() {
    const SynthesisParams params;
    PulseSequence seq{"excitation_only", {Shaped{build_excitation_waveform(params)}}};
    const OffsetGrid grid{-1.0, 1.0, 101};
    const auto p = excitation_profile(seq, grid, BlochVector::plus_z());
    double worst = 0.0;
    const std::size_t n = p.bloch.size();
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(p.bloch[i].mz - p.bloch[n - 1 - i].mz));
    }
    return at_most("max |mz(w) - mz(-w)|", worst, 1e-9);
}

// --- io --------------------------------------------------------------------

bool same_waveform(const Waveform& a, const Waveform& b) {
    if (a.segments.size() != b.segments.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        const auto& x = a.segments[i];
        const auto& y = b.segments[i];
        if (x.duration != y.duration || x.amplitude != y.amplitude || x.phase != y.phase) {
            return false;
        }
    }
    return true;
}

Outcome check_waveform_round_trip() {
    for (const Waveform& w : {build_excitation_waveform({}), build_chirp({})}) {
        if (!same_waveform(parse_waveform_csv(format_waveform_csv(w)), w)) {
            return {false, "waveform '" + w.name + "' changed through CSV"};
        }
    }
    return {true, "excitation and chirp CSV round trips exact"};
}

Outcome check_sequence_round_trip() {
    for (const auto& seq : {assemble_base_rotation({}, {}, Inversion::chirp),
                            assemble_base_excitation({}, {}, Inversion::ideal)}) {
        const PulseSequence back = parse_sequence(format_sequence(seq));
        if (back.name != seq.name || back.elements.size() != seq.elements.size()) {
            return {false, "sequence structure changed"};
        }
        for (std::size_t i = 0; i < seq.elements.size(); ++i) {
            if (seq.elements[i].index() != back.elements[i].index()) {
                return {false, "element kind changed at " + std::to_string(i)};
            }
            if (const auto* s = std::get_if<Shaped>(&seq.elements[i])) {
                if (!same_waveform(s->waveform, std::get<Shaped>(back.elements[i]).waveform)) {
                    return {false, "shaped element changed at " + std::to_string(i)};
                }
            } else if (const auto* d = std::get_if<Delay>(&seq.elements[i])) {
                if (d->duration != std::get<Delay>(back.elements[i]).duration) {
                    return {false, "delay changed at " + std::to_string(i)};
                }
            }
        }
    }
    return {true, "sequence file round trips exact"};
}

Outcome check_spectrometer_shape() {
    const std::string text = format_shape_spectrometer(build_chirp({}), PhysicalScale{});
    const bool header = text.find("##NPOINTS=1500\n") != std::string::npos;
    const auto lines = std::count(text.begin(), text.end(), '\n');
    // 8 header lines, 1500 points, ##END=
    return {header && lines == 1509, "chirp shape has " + std::to_string(lines) + " lines"};
}

}  // namespace

std::vector<CheckResult> run_verification() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
        {"su2.unitarity", check_unitarity},
        {"su2.refinement_convergence", check_refinement},
        {"su2.euler_round_trip", check_euler_round_trip},
        {"su2.bloch_consistency", check_bloch_consistency},
        {"su2.sign_convention", check_sign_convention},
        {"synthesis.coefficient_formula", check_coefficient_formula},
        {"synthesis.waveform_symmetry", check_waveform_symmetry},
        {"synthesis.partial_sum_equivalence", check_partial_sum_equivalence},
        {"synthesis.chirp_phase_continuity", check_chirp_phase_continuity},
        {"synthesis.adiabaticity_ordering", check_adiabaticity},
        {"synthesis.physical_durations", check_durations},
        {"simulator.refocusing_identity", check_refocusing_identity},
        {"simulator.first_order_validity", check_first_order_validity},
        {"simulator.norm_and_excitation_rotation_consistency", check_profile_norms_and_consistency},
        {"simulator.determinism", check_determinism},
        {"simulator.grid_evenness", check_grid_evenness},
        {"io.waveform_csv_round_trip", check_waveform_round_trip},
        {"io.sequence_round_trip", check_sequence_round_trip},
        {"io.spectrometer_shape", check_spectrometer_shape},
    };

    std::vector<CheckResult> results;
    results.reserve(checks.size());
    for (const auto& [name, fn] : checks) {
        CheckResult r{name, false, {}};
        try {
            Outcome o = fn();
            r.passed = o.passed;
            r.detail = std::move(o.detail);
        } catch (const std::exception& e) {
            r.detail = std::string("threw: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace base_pulse
