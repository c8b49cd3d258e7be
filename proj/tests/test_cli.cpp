#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "base_pulse/io.hpp"
#include "cli.hpp"
#include "temp_dir.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "base_pulse");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = base_pulse::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double reported_ms(const std::string& info) {
    const auto pos = info.find("total duration: ");
    REQUIRE(pos != std::string::npos);
    return std::stod(info.substr(pos + 16));
}

}  // namespace

TEST_CASE("cli: synth and chirp write shapes") {
    TempDir dir;
    const auto csv = (dir / "exc.csv").string();
    CHECK(run({"synth", "--band", "0.2", "--n", "10", "--m", "20", "--out", csv}).code == 0);
    const auto w = base_pulse::import_waveform_csv(csv);
    CHECK(w.segments.size() == 401);

    const auto jdx = (dir / "chirp.jdx").string();
    CHECK(run({"chirp", "--format", "jcamp", "--out", jdx}).code == 0);
    CHECK(base_pulse::read_file(jdx).find("##NPOINTS=1500") != std::string::npos);

    CHECK(run({"chirp", "--segments", "100", "--out", jdx}).code == 2);
    CHECK(run({"synth", "--band", "1.5", "--out", csv}).code == 2);
    CHECK(run({"synth", "--out", (dir / "missing" / "x.csv").string()}).code == 3);
}

TEST_CASE("cli: sequence durations via info") {
    TempDir dir;
    const auto exc = (dir / "exc.json").string();
    const auto rot = (dir / "rot.json").string();
    REQUIRE(run({"sequence", "--kind", "excitation", "--band", "0.2", "--n", "10", "--m", "20", "--out", exc}).code == 0);
    REQUIRE(run({"sequence", "--kind", "rotation", "--band", "0.2", "--n", "10", "--m", "20", "--out", rot}).code == 0);

    const Run a = run({"info", "--seq", exc, "--nu-ref", "20000"});
    CHECK(a.code == 0);
    CHECK(std::abs(reported_ms(a.out) - 3.89) <= 0.01);
    CHECK(a.out.find("shaped:chirp") != std::string::npos);

    const Run b = run({"info", "--seq", rot});
    CHECK(b.code == 0);
    // Printed to 3 decimals: 6.7797 ms shows as 6.780.
    CHECK(std::abs(reported_ms(b.out) - 6.77) <= 0.01 + 1e-9);

    const auto ideal = (dir / "ideal.json").string();
    REQUIRE(run({"sequence", "--kind", "excitation", "--ideal", "--out", ideal}).code == 0);
    CHECK(run({"info", "--seq", ideal}).out.find("ideal_inversion") != std::string::npos);
}

TEST_CASE("cli: profile") {
    TempDir dir;
    const auto seq = (dir / "ideal.json").string();
    REQUIRE(run({"sequence", "--kind", "excitation", "--ideal", "--out", seq}).code == 0);
    const auto csv = (dir / "p.csv").string();
    CHECK(run({"profile", "--seq", seq, "--points", "21", "--initial", "z", "--out", csv}).code == 0);
    std::istringstream in(base_pulse::read_file(csv));
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == "offset_hz,mx,my,mz");
    CHECK(rows[11].starts_with("0,"));
    const double my = std::stod(rows[11].substr(rows[11].find(',', 2) + 1));
    CHECK(my < -0.98);

    SUBCASE("errors") {
        CHECK(run({"profile", "--seq", seq, "--initial", "w", "--out", csv}).code == 2);
        CHECK(run({"profile", "--seq", seq, "--points", "1", "--out", csv}).code == 2);
        CHECK(run({"profile", "--seq", (dir / "nope.json").string(), "--out", csv}).code == 3);
        std::ofstream((dir / "bad.json").string()) << "{\"name\": 1}";
        CHECK(run({"profile", "--seq", (dir / "bad.json").string(), "--out", csv}).code == 3);
    }
}

TEST_CASE("cli: argument errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sequence", "--kind", "spiral", "--out", "x"}).code == 2);
    const Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
    const Run err = run({"info"});
    CHECK(err.code == 2);
    CHECK(!err.err.empty());
}

TEST_CASE("cli: verify") {
    const Run r = run({"verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS  io.sequence_round_trip") != std::string::npos);
}

TEST_CASE("cli: profile matches the frozen golden file") {
    TempDir dir;
    const auto seq = (dir / "exc.json").string();
    const auto csv = (dir / "p.csv").string();
    REQUIRE(run({"sequence", "--kind", "excitation", "--band", "0.2", "--n", "10", "--m", "20", "--out", seq}).code == 0);
    REQUIRE(run({"profile", "--seq", seq, "--points", "801", "--initial", "z", "--out", csv}).code == 0);

    auto rows = [](const std::string& text) {
        std::vector<std::vector<double>> out;
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::vector<double> row;
            std::istringstream fields(line);
            for (std::string f; std::getline(fields, f, ',');) row.push_back(std::stod(f));
            out.push_back(row);
        }
        return out;
    };
    const auto got = rows(base_pulse::read_file(csv));
    const auto want = rows(base_pulse::read_file(BASE_PULSE_GOLDEN_DIR "/base_excitation_b0.2_801.csv"));
    REQUIRE(got.size() == 801);
    REQUIRE(want.size() == 801);
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].size() == 4);
        CHECK(got[i][0] == want[i][0]);
        for (std::size_t c = 1; c < 4; ++c) worst = std::max(worst, std::abs(got[i][c] - want[i][c]));
    }
    // Tolerance covers libm differences across platforms.
    CHECK(worst < 1e-9);
}
