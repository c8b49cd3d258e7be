#include "base_pulse/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "base_pulse/error.hpp"

namespace base_pulse {

namespace {

using nlohmann::json;

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
    std::array<char, 512> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt, precision);
    if (ec != std::errc{}) {
        throw InvalidArgument("cannot format numeric value");
    }
    return {buf.data(), ptr};
}

std::string shortest(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw InvalidArgument("cannot format numeric value");
    }
    return {buf.data(), ptr};
}

std::string general(double value, int precision = 15) {
    return to_chars_string(value, std::chars_format::general, precision);
}

std::string fixed(double value, int decimals) {
    return to_chars_string(value, std::chars_format::fixed, decimals);
}

bool parse_double(std::string_view text, double& out) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

Waveform parse_waveform_csv_impl(const std::string& text, const std::string& name,
                                 const std::string& source) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || (line != kWaveformCsvHeader && line != std::string(kWaveformCsvHeader) + "\r")) {
        throw FormatError(source, std::string("missing '") + kWaveformCsvHeader + "' header");
    }
    Waveform w;
    w.name = name;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view(line);
        const auto c1 = view.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
        PulseSegment seg;
        if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos ||
            !parse_double(view.substr(0, c1), seg.duration) ||
            !parse_double(view.substr(c1 + 1, c2 - c1 - 1), seg.amplitude) ||
            !parse_double(view.substr(c2 + 1), seg.phase)) {
            throw FormatError(source, "line " + std::to_string(line_no) +
                                          ": expected 'duration,amplitude,phase'");
        }
        w.segments.push_back(seg);
    }
    try {
        w.validate();
    } catch (const InvalidArgument& e) {
        throw FormatError(source, e.what());
    }
    return w;
}

json segments_to_json(const Waveform& w) {
    json segments = json::array();
    for (const auto& seg : w.segments) {
        segments.push_back({{"duration", seg.duration}, {"amplitude", seg.amplitude}, {"phase", seg.phase}});
    }
    return segments;
}

const json& require(const json& obj, const char* key, const std::string& context) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw InvalidArgument(context + ": missing '" + key + "'");
    }
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_number()) {
        throw InvalidArgument(context + ": '" + key + "' must be a number");
    }
    return v.get<double>();
}

PulseSequence parse_sequence_impl(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(source, e.what());
    }
    try {
        if (!doc.is_object()) {
            throw InvalidArgument("top level must be an object");
        }
        PulseSequence seq;
        const json& name = require(doc, "name", "sequence");
        if (!name.is_string()) {
            throw InvalidArgument("sequence: 'name' must be a string");
        }
        seq.name = name.get<std::string>();
        const json& elements = require(doc, "elements", "sequence");
        if (!elements.is_array()) {
            throw InvalidArgument("sequence: 'elements' must be an array");
        }
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const json& el = elements[i];
            const std::string ctx = "element " + std::to_string(i);
            if (!el.is_object()) {
                throw InvalidArgument(ctx + ": must be an object");
            }
            const json& type = require(el, "type", ctx);
            const std::string kind = type.is_string() ? type.get<std::string>() : std::string();
            if (kind == "shaped") {
                Waveform w;
                if (const auto it = el.find("name"); it != el.end() && it->is_string()) {
                    w.name = it->get<std::string>();
                }
                const json& segments = require(el, "segments", ctx);
                if (!segments.is_array()) {
                    throw InvalidArgument(ctx + ": 'segments' must be an array");
                }
                for (const json& s : segments) {
                    if (!s.is_object()) {
                        throw InvalidArgument(ctx + ": segment must be an object");
                    }
                    w.segments.push_back({require_number(s, "duration", ctx),
                                          require_number(s, "amplitude", ctx),
                                          require_number(s, "phase", ctx)});
                }
                seq.elements.emplace_back(Shaped{std::move(w)});
            } else if (kind == "delay") {
                seq.elements.emplace_back(Delay{require_number(el, "duration", ctx)});
            } else if (kind == "ideal_inversion") {
                seq.elements.emplace_back(IdealInversion{});
            } else {
                throw InvalidArgument(ctx + ": unknown element type");
            }
        }
        seq.validate();
        return seq;
    } catch (const InvalidArgument& e) {
        throw FormatError(source, e.what());
    } catch (const json::exception& e) {
        throw FormatError(source, e.what());
    }
}

}  // namespace

std::string format_exact_fixed(double value, int min_decimals) {
    for (int decimals = min_decimals; decimals <= 20; ++decimals) {
        std::string text = fixed(value, decimals);
        double back = 0.0;
        if (parse_double(text, back) && back == value) {
            return text;
        }
    }
    return shortest(value);
}

std::string format_waveform_csv(const Waveform& w) {
    w.validate();
    std::string out = kWaveformCsvHeader;
    out += '\n';
    for (const auto& seg : w.segments) {
        out += format_exact_fixed(seg.duration);
        out += ',';
        out += format_exact_fixed(seg.amplitude);
        out += ',';
        out += format_exact_fixed(seg.phase);
        out += '\n';
    }
    return out;
}

Waveform parse_waveform_csv(const std::string& text, const std::string& name) {
    return parse_waveform_csv_impl(text, name, "<waveform>");
}

void export_waveform_csv(const Waveform& w, const std::filesystem::path& path) {
    write_file_atomic(path, format_waveform_csv(w));
}

Waveform import_waveform_csv(const std::filesystem::path& path) {
    return parse_waveform_csv_impl(read_file(path), path.stem().string(), path.string());
}

std::string format_shape_spectrometer(const Waveform& w, const PhysicalScale& scale) {
    w.validate();
    scale.validate();
    const double step = w.segments.front().duration;
    for (const auto& seg : w.segments) {
        if (std::abs(seg.duration - step) > 1e-12 * step) {
            throw UnsupportedShape("spectrometer shapes need equal segment durations; waveform '" +
                                   w.name + "' is not on a uniform raster");
        }
    }
    const double peak = w.peak_amplitude();
    const double total_us = scale.seconds(w.total_duration()) * 1e6;

    std::string out;
    out += "##TITLE=" + (w.name.empty() ? std::string("base_pulse shape") : w.name) + "\n";
    out += "##JCAMP-DX=5.00\n";
    out += "##DATA TYPE=Shape Data\n";
    out += "##ORIGIN=base_pulse\n";
    out += "##$SHAPE_AMPLITUDE=" + general(scale.hertz(peak), 12) + "\n";
    out += "##$SHAPE_LENGTH_US=" + general(total_us, 12) + "\n";
    out += "##NPOINTS=" + std::to_string(w.segments.size()) + "\n";
    out += "##XYPOINTS=(XY..XY)\n";
    for (const auto& seg : w.segments) {
        const double percent = peak > 0.0 ? 100.0 * seg.amplitude / peak : 0.0;
        std::string degrees = fixed(wrap_phase(seg.phase) * 180.0 / std::numbers::pi, 6);
        if (degrees == "360.000000") {
            degrees = "0.000000";
        }
        out += fixed(percent, 6) + ", " + degrees + "\n";
    }
    out += "##END=\n";
    return out;
}

void export_shape_spectrometer(const Waveform& w, const PhysicalScale& scale,
                               const std::filesystem::path& path) {
    write_file_atomic(path, format_shape_spectrometer(w, scale));
}

std::string format_profile_csv(const ExcitationProfile& p, const PhysicalScale& scale) {
    scale.validate();
    if (p.offsets.size() != p.bloch.size()) {
        throw InvalidArgument("profile offsets and Bloch vectors differ in length");
    }
    std::string out = "offset_hz,mx,my,mz\n";
    for (std::size_t i = 0; i < p.offsets.size(); ++i) {
        const BlochVector& v = p.bloch[i];
        out += general(scale.hertz(p.offsets[i])) + ',' + general(v.mx) + ',' + general(v.my) +
               ',' + general(v.mz) + '\n';
    }
    return out;
}

void export_profile_csv(const ExcitationProfile& p, const PhysicalScale& scale,
                        const std::filesystem::path& path) {
    write_file_atomic(path, format_profile_csv(p, scale));
}

std::string format_sequence(const PulseSequence& seq) {
    seq.validate();
    json elements = json::array();
    for (const auto& element : seq.elements) {
        if (const auto* shaped = std::get_if<Shaped>(&element)) {
            elements.push_back({{"type", "shaped"},
                                {"name", shaped->waveform.name},
                                {"segments", segments_to_json(shaped->waveform)}});
        } else if (const auto* delay = std::get_if<Delay>(&element)) {
            elements.push_back({{"type", "delay"}, {"duration", delay->duration}});
        } else {
            elements.push_back({{"type", "ideal_inversion"}});
        }
    }
    json doc = {{"name", seq.name}, {"elements", std::move(elements)}};
    return doc.dump(2) + "\n";
}

PulseSequence parse_sequence(const std::string& text) {
    return parse_sequence_impl(text, "<sequence>");
}

void save_sequence(const PulseSequence& seq, const std::filesystem::path& path) {
    write_file_atomic(path, format_sequence(seq));
}

PulseSequence load_sequence(const std::filesystem::path& path) {
    return parse_sequence_impl(read_file(path), path.string());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::random_device rd;
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(path.string(), "cannot open for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError(path.string(), "write failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError(path.string(), "rename failed: " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError(path.string(), "read failed");
    }
    return ss.str();
}

}  // namespace base_pulse
