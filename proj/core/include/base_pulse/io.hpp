#pragma once

// File formats. All writers are atomic (temporary file + rename) and format
// numbers independently of the process locale.
//
//   waveform CSV       "# base-shape v1" then duration,amplitude,phase per line
//   spectrometer shape JCAMP-style ##XYPOINTS=(XY..XY) percent/degree pairs
//   profile CSV        offset_hz,mx,my,mz
//   sequence file      JSON object {"name", "elements": [...]}

#include <filesystem>
#include <string>

#include "base_pulse/simulator.hpp"
#include "base_pulse/synthesis.hpp"

namespace base_pulse {

inline constexpr const char* kWaveformCsvHeader = "# base-shape v1";

[[nodiscard]] std::string format_waveform_csv(const Waveform& w);
[[nodiscard]] Waveform parse_waveform_csv(const std::string& text, const std::string& name = "");
void export_waveform_csv(const Waveform& w, const std::filesystem::path& path);
[[nodiscard]] Waveform import_waveform_csv(const std::filesystem::path& path);

// Requires equal segment durations (UnsupportedShape otherwise).
[[nodiscard]] std::string format_shape_spectrometer(const Waveform& w, const PhysicalScale& scale);
void export_shape_spectrometer(const Waveform& w, const PhysicalScale& scale,
                               const std::filesystem::path& path);

[[nodiscard]] std::string format_profile_csv(const ExcitationProfile& p, const PhysicalScale& scale);
void export_profile_csv(const ExcitationProfile& p, const PhysicalScale& scale,
                        const std::filesystem::path& path);

[[nodiscard]] std::string format_sequence(const PulseSequence& seq);
[[nodiscard]] PulseSequence parse_sequence(const std::string& text);
void save_sequence(const PulseSequence& seq, const std::filesystem::path& path);
[[nodiscard]] PulseSequence load_sequence(const std::filesystem::path& path);

// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

// Fixed notation with at least `min_decimals` decimals, extended until the
// text parses back to exactly `value`.
[[nodiscard]] std::string format_exact_fixed(double value, int min_decimals = 12);

}  // namespace base_pulse
