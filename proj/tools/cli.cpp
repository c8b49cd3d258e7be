#include "cli.hpp"

#include <charconv>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "base_pulse/error.hpp"
#include "base_pulse/io.hpp"
#include "base_pulse/simulator.hpp"
#include "base_pulse/synthesis.hpp"
#include "base_pulse/verification.hpp"

namespace base_pulse::cli {

namespace {

struct Options {
    SynthesisParams synthesis;
    ChirpParams chirp;
    PhysicalScale scale;
    OffsetGrid grid;
    std::string out_path;
    std::string seq_path;
    std::string format = "csv";
    std::string kind;
    std::string initial = "z";
    bool ideal = false;
    unsigned threads = 0;
};

void add_synthesis_flags(CLI::App* app, Options& o) {
    app->add_option("--band", o.synthesis.band, "Band half-width B (normalized, 0 < B < 1)")
        ->capture_default_str();
    app->add_option("--n", o.synthesis.n, "Sample step pi/n")->capture_default_str();
    app->add_option("--m", o.synthesis.m, "Half-duration m*pi")->capture_default_str();
    app->add_option("--angle", o.synthesis.target_angle, "Target flip angle (radians)")
        ->capture_default_str();
}

void add_chirp_flags(CLI::App* app, Options& o) {
    app->add_option("--start", o.chirp.freq_start, "Sweep start frequency")->capture_default_str();
    app->add_option("--end", o.chirp.freq_end, "Sweep end frequency")->capture_default_str();
    app->add_option("--duration", o.chirp.duration, "Sweep duration (normalized time)")
        ->capture_default_str();
    app->add_option("--amp", o.chirp.peak_amplitude, "Peak RF amplitude")->capture_default_str();
    app->add_option("--ramp-fraction", o.chirp.ramp_fraction, "Fraction of the sweep spent ramping")
        ->capture_default_str();
    app->add_option("--segments", o.chirp.n_segments, "Number of piecewise-constant segments")
        ->capture_default_str();
}

void add_shape_output_flags(CLI::App* app, Options& o) {
    app->add_option("--out", o.out_path, "Output file")->required();
    app->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "jcamp"}))
        ->capture_default_str();
    app->add_option("--nu-ref", o.scale.nu_ref, "Hz mapped to normalized offset 1 (jcamp header)")
        ->capture_default_str();
}

BlochVector initial_state(const std::string& label) {
    static const std::map<std::string, BlochVector> states = {
        {"x", {1, 0, 0}},  {"y", {0, 1, 0}},  {"z", {0, 0, 1}},
        {"-x", {-1, 0, 0}}, {"-y", {0, -1, 0}}, {"-z", {0, 0, -1}},
    };
    return states.at(label);
}

void write_waveform(const Waveform& w, const Options& o) {
    if (o.format == "jcamp") {
        export_shape_spectrometer(w, o.scale, o.out_path);
    } else {
        export_waveform_csv(w, o.out_path);
    }
}

std::string fixed(double value, int decimals) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void print_info(const PulseSequence& seq, const PhysicalScale& scale, std::ostream& out) {
    out << "sequence: " << seq.name << '\n';
    out << std::left << std::setw(4) << "#" << std::setw(28) << "element" << std::right
        << std::setw(10) << "segments" << std::setw(16) << "duration" << std::setw(14)
        << "duration_ms" << std::setw(14) << "peak_amp_hz" << '\n';
    for (std::size_t i = 0; i < seq.elements.size(); ++i) {
        std::string label;
        std::size_t segments = 0;
        double duration = 0.0;
        double peak = 0.0;
        if (const auto* s = std::get_if<Shaped>(&seq.elements[i])) {
            label = "shaped:" + s->waveform.name;
            segments = s->waveform.segments.size();
            duration = s->waveform.total_duration();
            peak = s->waveform.peak_amplitude();
        } else if (const auto* d = std::get_if<Delay>(&seq.elements[i])) {
            label = "delay";
            duration = d->duration;
        } else {
            label = "ideal_inversion";
        }
        out << std::left << std::setw(4) << i << std::setw(28) << label << std::right
            << std::setw(10) << segments << std::setw(16) << fixed(duration, 6) << std::setw(14)
            << fixed(scale.seconds(duration) * 1e3, 6) << std::setw(14)
            << fixed(scale.hertz(peak), 3) << '\n';
    }
    out << "total duration: " << fixed(total_duration(seq, scale) * 1e3, 3) << " ms\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Band-selective excitation pulse design and spin-1/2 simulation", "base_pulse"};
    app.require_subcommand(1);
    Options o;

    auto* synth = app.add_subcommand("synth", "Write the Fourier-series excitation waveform");
    add_synthesis_flags(synth, o);
    add_shape_output_flags(synth, o);

    auto* chirp = app.add_subcommand("chirp", "Write a linear adiabatic chirp waveform");
    add_chirp_flags(chirp, o);
    add_shape_output_flags(chirp, o);

    auto* sequence = app.add_subcommand("sequence", "Write a double-sweep composite sequence file");
    sequence->add_option("--kind", o.kind, "Sequence kind")
        ->required()
        ->check(CLI::IsMember({"excitation", "rotation"}));
    sequence->add_flag("--ideal", o.ideal, "Use instantaneous ideal inversions instead of chirps");
    add_synthesis_flags(sequence, o);
    add_chirp_flags(sequence, o);
    sequence->add_option("--out", o.out_path, "Output sequence file")->required();

    auto* profile = app.add_subcommand("profile", "Simulate a sequence over an offset grid");
    profile->add_option("--seq", o.seq_path, "Sequence file")->required();
    profile->add_option("--omega-min", o.grid.omega_min, "Lowest normalized offset")->capture_default_str();
    profile->add_option("--omega-max", o.grid.omega_max, "Highest normalized offset")->capture_default_str();
    profile->add_option("--points", o.grid.n_points, "Grid points")->capture_default_str();
    profile->add_option("--initial", o.initial, "Initial Bloch vector")
        ->check(CLI::IsMember({"x", "y", "z", "-x", "-y", "-z"}))
        ->capture_default_str();
    profile->add_option("--nu-ref", o.scale.nu_ref, "Hz mapped to normalized offset 1")->capture_default_str();
    profile->add_option("--threads", o.threads, "Worker threads (0 = automatic)")->capture_default_str();
    profile->add_option("--out", o.out_path, "Output profile CSV")->required();

    auto* info = app.add_subcommand("info", "Print the element table and physical duration");
    info->add_option("--seq", o.seq_path, "Sequence file")->required();
    info->add_option("--nu-ref", o.scale.nu_ref, "Hz mapped to normalized offset 1")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "base_pulse: " << e.what() << '\n';
        return kInvalidArguments;
    }

    try {
        if (synth->parsed()) {
            write_waveform(build_excitation_waveform(o.synthesis), o);
        } else if (chirp->parsed()) {
            write_waveform(build_chirp(o.chirp), o);
        } else if (sequence->parsed()) {
            const Inversion inv = o.ideal ? Inversion::ideal : Inversion::chirp;
            const PulseSequence seq = o.kind == "rotation"
                                          ? assemble_base_rotation(o.synthesis, o.chirp, inv)
                                          : assemble_base_excitation(o.synthesis, o.chirp, inv);
            save_sequence(seq, o.out_path);
        } else if (profile->parsed()) {
            o.scale.validate();
            o.grid.validate();
            const PulseSequence seq = load_sequence(o.seq_path);
            const ExcitationProfile p =
                excitation_profile(seq, o.grid, initial_state(o.initial), o.threads);
            export_profile_csv(p, o.scale, o.out_path);
        } else if (info->parsed()) {
            o.scale.validate();
            print_info(load_sequence(o.seq_path), o.scale, out);
        } else if (verify->parsed()) {
            bool all = true;
            for (const auto& r : run_verification()) {
                out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  " << r.detail << '\n';
                all = all && r.passed;
            }
            if (!all) {
                err << "base_pulse: verification failed\n";
                return kVerificationFailure;
            }
        }
    } catch (const IoError& e) {
        err << "base_pulse: " << e.what() << '\n';
        return kIoError;
    } catch (const InvalidArgument& e) {
        err << "base_pulse: " << e.what() << '\n';
        return kInvalidArguments;
    }
    return kOk;
}

}  // namespace base_pulse::cli
