#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "polsp/cli/config_io.hpp"
#include "polsp/cli/run.hpp"
#include "polsp/errors.hpp"

using namespace polsp;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("polsp_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::filesystem::path write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<double>> csv_rows(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> r;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}

int exit_code(const std::string& args) {
    const std::string cmd = std::string(POLSP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kMinimal = R"({"oscillators": [{"omega": 5.0, "G": 1.0}]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("a minimal config takes the defaults") {
    const auto rc = cli::parse_config_text(kMinimal);
    CHECK(rc.cavity.L == 1.0);
    CHECK(rc.cavity.l == 0.5);
    CHECK(rc.cavity.c == 1.0);
    CHECK(rc.cavity.photon_modes == 8);
    CHECK(rc.cavity.exciton_modes == 2);
    CHECK(rc.cavity.solver.method == Method::dynamical);
    CHECK(rc.sweep.points == 1);
    CHECK_FALSE(rc.has_kk);
    REQUIRE(rc.cavity.oscillators.size() == 1);
    CHECK(rc.cavity.oscillators[0] == OscillatorSpecies{5.0, 1.0});
}

TEST_CASE("canonical JSON parses back to the same config") {
    auto rc = cli::parse_config_text(R"({"geometry": {"L": 2, "l": 0.3},
        "oscillators": [{"omega": 5.0, "G": 1.0}, {"omega": 7.0}],
        "solver": {"method": "secular", "omega_max": 40},
        "sweep": {"q_min": 0, "q_max": 3, "points": 4}})");
    const auto again = cli::parse_config(cli::to_json(rc));
    CHECK(again.cavity == rc.cavity);
    CHECK(again.sweep.grid() == rc.sweep.grid());
    CHECK(rc.sweep.grid() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("parse errors name the field") {
    const auto field_of = [](const std::string& text) {
        try {
            cli::parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of(R"({"oscillators": [], "geometri": {}})") == "geometri");
    CHECK(field_of(R"({"oscillators": [{"omega": 1, "g": 2}]})") == "oscillators[0].g");
    CHECK(field_of(R"({"oscillators": [{"omega": "x"}]})") == "oscillators[0].omega");
    CHECK(field_of(R"({"oscillators": [{"omega": 1}], "solver": {"method": "magic"}})") == "solver.method");
    CHECK(field_of(R"({"oscillators": [{"omega": 1}], "basis": {"photon_modes": 2.5}})") == "basis.photon_modes");
    CHECK(field_of(R"({"geometry": {}})") == "oscillators");
    CHECK_THROWS_AS(cli::parse_config_text("{not json"), ParseError);
}

TEST_CASE("validation errors from a file keep their path") {
    const auto dir = scratch("validate");
    const auto p = write(dir / "c.json", R"({"geometry": {"L": 1, "l": 2}, "oscillators": [{"omega": 1, "G": 1}]})");
    try {
        cli::load_config(p);
        FAIL("expected GeometryError");
    } catch (const GeometryError& e) {
        CHECK(e.field() == "geometry.l");
    }
}

TEST_CASE("spectrum without coupling lists the bare frequencies") {
    const auto dir = scratch("spectrum");
    auto rc = cli::parse_config_text(R"({"oscillators": [{"omega": 4.0, "G": 0.0}],
        "basis": {"photon_modes": 3, "exciton_modes": 1}, "sweep": {"q_min": 0.0}})");
    cli::RunOptions opts{cli::Command::spectrum, dir};
    const auto res = cli::run(rc, opts);
    const auto rows = csv_rows(dir / "spectrum.csv");
    const double pi = std::numbers::pi;
    const std::vector<double> expect{pi, 4.0, 2 * pi, 3 * pi};
    REQUIRE(rows.size() == expect.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i][1] == doctest::Approx(expect[i]).epsilon(1e-11));
        CHECK(rows[i][6] == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(res.manifest["command"] == "spectrum");
    CHECK(res.files.back().filename() == "manifest.json");
}

TEST_CASE("identical inputs give identical digests and outputs") {
    const auto a = scratch("digest_a"), b = scratch("digest_b");
    auto rc = cli::parse_config_text(R"({"oscillators": [{"omega": 6.0, "G": 2.0}],
        "sweep": {"q_min": 0, "q_max": 4, "points": 9}})");
    const auto ra = cli::run(rc, {cli::Command::sweep, a, std::nullopt, 1});
    const auto rb = cli::run(rc, {cli::Command::sweep, b, std::nullopt, 3});
    CHECK(ra.manifest["manifest_digest"] == rb.manifest["manifest_digest"]);
    CHECK(ra.manifest["outputs"] == rb.manifest["outputs"]);
    CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));

    // Rerun from the manifest.
    const auto c = scratch("digest_c");
    const auto from_manifest = cli::load_config(a / "manifest.json");
    const auto rc2 = cli::run(from_manifest, {cli::Command::sweep, c});
    CHECK(rc2.manifest["manifest_digest"] == ra.manifest["manifest_digest"]);
    CHECK(slurp(c / "sweep.csv") == slurp(a / "sweep.csv"));

    // A different method changes the digest.
    const auto d = scratch("digest_d");
    const auto rd = cli::run(rc, {cli::Command::sweep, d, Method::secular});
    CHECK(rd.manifest["manifest_digest"] != ra.manifest["manifest_digest"]);
}

TEST_CASE("converge table shrinks with the exciton basis") {
    const auto dir = scratch("converge");
    auto rc = cli::parse_config_text(R"({"oscillators": [{"omega": 10.0, "G": 3.0}],
        "converge": {"photon_modes": 64, "exciton_modes": [1, 2, 4, 8], "roots": 3}})");
    cli::run(rc, {cli::Command::converge, dir});
    const auto rows = csv_rows(dir / "converge.csv");
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][3] < rows[i - 1][3]);
}

TEST_CASE("kk command writes the transform and resolves its input") {
    const auto dir = scratch("kk");
    std::string data;
    for (int i = 0; i <= 400; ++i) {
        const double w = 0.025 * i;
        const double v = 0.1 * w / (std::pow(1 - w * w, 2) + 0.01 * w * w);
        data += std::to_string(w) + " " + std::to_string(v) + "\n";
    }
    write(dir / "chi2.dat", data);
    const auto cfg = write(dir / "c.json", R"({"oscillators": [{"omega": 1.0}], "kk": {"input": "chi2.dat"}})");
    const auto rc = cli::load_config(cfg);
    CHECK(std::filesystem::path(rc.kk.input).is_absolute());
    const auto res = cli::run(rc, {cli::Command::kk, dir / "out"});
    CHECK(std::filesystem::exists(dir / "out" / "kk_forward.dat"));
    CHECK(res.manifest.contains("kk_input_sha256"));
    CHECK(res.warnings.empty());
}

TEST_CASE("exit codes") {
    const auto dir = scratch("exit");
    const auto good = write(dir / "good.json", kMinimal);
    const auto bad = write(dir / "bad.json", R"({"oscillators": [{"omega": 1}], "extra": 1})");
    write(dir / "grid.dat", "0 0\n2 1\n1 1\n3 0\n");
    const auto solver_fail = write(dir / "kk.json", R"({"oscillators": [{"omega": 1}], "kk": {"input": "grid.dat"}})");
    const std::string out = " --out " + (dir / "o").string();

    CHECK(exit_code("spectrum --config " + good.string() + out) == 0);
    CHECK(exit_code("spectrum --config " + bad.string() + out) == 2);
    CHECK(exit_code("spectrum --config " + (dir / "missing.json").string() + out) == 2);
    CHECK(exit_code("frobnicate --config " + good.string() + out) == 2);
    CHECK(exit_code("sweep --config " + good.string() + " --method nope" + out) == 2);
    CHECK(exit_code("kk --config " + solver_fail.string() + out) == 3);
}

}
