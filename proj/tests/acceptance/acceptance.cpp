// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "base_pulse/io.hpp"
#include "base_pulse/simulator.hpp"
#include "base_pulse/verification.hpp"
#include "cli.hpp"
#include "oracle.hpp"
#include "temp_dir.hpp"

using namespace base_pulse;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [violated: " << what << "]";
        }
    }
};

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "base_pulse");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    return code;
}

double info_ms(const std::string& text) {
    const auto pos = text.find("total duration: ");
    return pos == std::string::npos ? -1.0 : std::stod(text.substr(pos + 16));
}

// 1. Physical durations through the CLI.
void duration_reproduction(Verdict& v) {
    TempDir dir;
    const auto exc = (dir / "exc.json").string();
    const auto rot = (dir / "rot.json").string();
    const std::vector<std::string> common = {"--band", "0.2", "--n", "10", "--m", "20",
                                             "--start", "-1.5", "--end", "1.5", "--duration", "150",
                                             "--amp", "0.5"};
    auto args = [&](const std::string& kind, const std::string& out) {
        std::vector<std::string> a = {"sequence", "--kind", kind};
        a.insert(a.end(), common.begin(), common.end());
        a.insert(a.end(), {"--out", out});
        return a;
    };
    v.require(run_cli(args("excitation", exc)) == 0, "excitation sequence written");
    v.require(run_cli(args("rotation", rot)) == 0, "rotation sequence written");
    std::string a, b;
    v.require(run_cli({"info", "--seq", exc, "--nu-ref", "20000"}, &a) == 0, "info excitation");
    v.require(run_cli({"info", "--seq", rot, "--nu-ref", "20000"}, &b) == 0, "info rotation");
    const double ms_exc = info_ms(a), ms_rot = info_ms(b);
    v.detail << "excitation " << ms_exc << " ms (3.89 +- 0.01), rotation " << ms_rot << " ms (6.77 +- 0.01)";
    v.require(std::abs(ms_exc - 3.89) <= 0.01 + 1e-12, "3.89 ms");
    v.require(std::abs(ms_rot - 6.77) <= 0.01 + 1e-12, "6.77 ms");
}

// 2. Fourier response passband / stopband.
void fourier_response_shape(Verdict& v) {
    const SynthesisParams p{0.2, 10, 20};
    const OffsetGrid grid{-1.0, 1.0, 2001};
    const auto r = fourier_response(p, grid);
    const Waveform w = build_excitation_waveform(p);
    double pass_err = 0.0, stop_max = 0.0, oracle_diff = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double omega = grid.at(i);
        const double value = r[static_cast<std::size_t>(i)];
        oracle_diff = std::max(oracle_diff, std::abs(oracle::riemann_sum(w, omega).real() - value));
        if (std::abs(omega) <= 0.16) pass_err = std::max(pass_err, std::abs(value - kPi / 2));
        if (std::abs(omega) >= 0.30) stop_max = std::max(stop_max, std::abs(value));
    }
    v.detail << "max |F - pi/2| in band " << pass_err << " (<= 0.15), max |F| out of band " << stop_max
             << " (<= 0.12), oracle diff " << oracle_diff;
    v.require(pass_err <= 0.15, "passband");
    v.require(stop_max <= 0.12, "stopband");
    v.require(oracle_diff <= 1e-10, "partial-sum oracle agreement");
}

struct BandStats {
    double min_in = 1e9;   // chosen observable, in band
    double max_out_transverse = 0.0;
    double min_out_mz = 1e9;
    double min_out_my = 1e9;
};

BandStats band_stats(const ExcitationProfile& p, double in_edge, double out_edge, bool excitation) {
    BandStats s;
    for (std::size_t i = 0; i < p.offsets.size(); ++i) {
        const double omega = std::abs(p.offsets[i]);
        const auto& b = p.bloch[i];
        if (omega <= in_edge + 1e-12) s.min_in = std::min(s.min_in, excitation ? -b.my : b.mz);
        if (omega >= out_edge - 1e-12) {
            s.max_out_transverse = std::max(s.max_out_transverse, std::hypot(b.mx, b.my));
            s.min_out_mz = std::min(s.min_out_mz, b.mz);
            s.min_out_my = std::min(s.min_out_my, b.my);
        }
    }
    return s;
}

// 3. Ideal-inversion excitation.
void ideal_excitation_profile(Verdict& v) {
    const auto seq = assemble_base_excitation({0.2, 10, 20}, {}, Inversion::ideal);
    const auto p = excitation_profile(seq, {-1.0, 1.0, 801}, BlochVector::plus_z());
    const auto s = band_stats(p, 0.16, 0.30, true);
    v.detail << "min -my in band " << s.min_in << " (>= 0.95), max transverse out " << s.max_out_transverse
             << " (<= 0.12), min mz out " << s.min_out_mz << " (>= 0.98)";
    v.require(s.min_in >= 0.95, "in-band -my");
    v.require(s.max_out_transverse <= 0.12, "out-of-band transverse");
    v.require(s.min_out_mz >= 0.98, "out-of-band mz");
}

// 4. Chirp-realized excitation for three bands.
void chirp_excitation_profiles(Verdict& v) {
    for (double band : {0.1, 0.2, 0.4}) {
        const auto seq = assemble_base_excitation({band, 10, 20}, ChirpParams{}, Inversion::chirp);
        const auto p = excitation_profile(seq, {-1.0, 1.0, 801}, BlochVector::plus_z());
        const auto s = band_stats(p, 0.8 * band, 1.5 * band, true);
        v.detail << " B=" << band << ": min -my " << s.min_in << ", max transverse " << s.max_out_transverse << ";";
        v.require(s.min_in >= 0.90, "B=" + std::to_string(band) + " in-band -my >= 0.90");
        v.require(s.max_out_transverse <= 0.15, "B=" + std::to_string(band) + " out-of-band transverse <= 0.15");
    }
}

// 5. Rotation profiles from +y.
void rotation_profiles(Verdict& v) {
    for (double band : {0.1, 0.2, 0.4}) {
        const auto seq = assemble_base_rotation({band, 10, 20}, ChirpParams{}, Inversion::chirp);
        const auto p = excitation_profile(seq, {-1.0, 1.0, 801}, BlochVector::plus_y());
        const auto s = band_stats(p, 0.8 * band, 1.5 * band, false);
        v.detail << " B=" << band << ": min mz " << s.min_in << ", min my out " << s.min_out_my << ";";
        v.require(s.min_in >= 0.90, "B=" + std::to_string(band) + " in-band mz >= 0.90");
        v.require(s.min_out_my >= 0.85, "B=" + std::to_string(band) + " out-of-band my >= 0.85");
    }
}

// 6. Refocusing identity with arbitrary inversion z-phases.
void refocusing_identity(Verdict& v) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const double half = build_excitation_waveform({}).total_duration() / 2.0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto theta = from_euler_zxz({angle(rng), kPi, angle(rng)});
        for (int i = 0; i <= 10; ++i) {
            const double omega = -1.0 + 0.2 * i;
            const auto lhs = compose(theta, compose(propagator_const(omega, 0.0, 0.0, half), theta));
            worst = std::max(worst, rotation_distance(lhs, propagator_const(-omega, 0.0, 0.0, half)));
        }
    }
    v.detail << "max distance " << worst << " (< 1e-10)";
    v.require(worst < 1e-10, "refocusing distance");
}

// 7. Chirp inversion efficiency.
void chirp_inversion_quality(Verdict& v) {
    const auto report = inversion_report(build_chirp({}), {-1.0, 1.0, 801});
    double worst = 1.0;
    for (std::size_t i = 0; i < report.offsets.size(); ++i) {
        if (std::abs(report.offsets[i]) <= 0.9 + 1e-12) worst = std::min(worst, report.efficiency[i]);
    }
    v.detail << "min efficiency for |w| <= 0.9: " << worst << " (>= 0.98)";
    v.require(worst >= 0.98, "inversion efficiency");
}

// 8. Structural invariants, through the library and the CLI entry point.
void structural_invariants(Verdict& v) {
    int failed = 0;
    const auto results = run_verification();
    for (const auto& r : results) {
        if (!r.passed) {
            ++failed;
            v.detail << r.name << ": " << r.detail << "; ";
        }
    }
    v.detail << results.size() - failed << "/" << results.size() << " invariant checks pass";
    v.require(failed == 0, "all invariant checks");
    std::string out;
    v.require(run_cli({"verify"}, &out) == 0, "`verify` exit code 0");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Verdict&)> fn;
        double budget_s;
    };
    const std::vector<Criterion> criteria = {
        {"AC1 duration reproduction", duration_reproduction, 5},
        {"AC2 Fourier response", fourier_response_shape, 1},
        {"AC3 ideal-inversion excitation profile", ideal_excitation_profile, 5},
        {"AC4 chirp excitation profiles", chirp_excitation_profiles, 60},
        {"AC5 rotation profiles", rotation_profiles, 120},
        {"AC6 refocusing identity", refocusing_identity, 1},
        {"AC7 chirp inversion quality", chirp_inversion_quality, 30},
        {"AC8 structural invariants", structural_invariants, 10},
    };

    int failures = 0;
    std::cout << std::setprecision(6);
    for (const auto& c : criteria) {
        Verdict v;
        v.detail << std::setprecision(6);
        const auto start = std::chrono::steady_clock::now();
        try {
            c.fn(v);
        } catch (const std::exception& e) {
            v.passed = false;
            v.detail << " threw: " << e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.detail << " | " << std::setprecision(3) << elapsed << " s (budget " << c.budget_s << " s)";
        v.require(elapsed < c.budget_s, "runtime budget");
        std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << v.detail.str() << '\n';
        failures += v.passed ? 0 : 1;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria pass" : "acceptance: FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}
