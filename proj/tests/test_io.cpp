#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "twistpass/io.hpp"
#include "twistpass/svg_plot.hpp"

using namespace twistpass;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "twistpass_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

trajectory awkward_trajectory() {
    trajectory traj;
    traj.tau0 = 2.0;
    traj.samples.push_back({-1.0, {1.0 / 3.0, -0.0}, {5e-324, 1e-300}, 0.0});
    traj.samples.push_back({0.0, {std::numbers::pi, -2.5e-7}, {0.1234567890123456, 0.5}, 0.2652});
    traj.samples.push_back({1.0, {0.0, 1e17}, {-1.0 / 7.0, 2e-9}, 0.02040816326530612});
    return traj;
}

} // namespace

TEST_CASE("full-precision formatting round-trips doubles bitwise", "[io]") {
    for (double v : {std::numbers::pi, 1.0 / 3.0, 6.02214076e23, 5e-324, 1e-300, -0.0,
                     0.1234567890123456, -1.7976931348623157e308}) {
        const std::string s = io::format_full(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    }
}

TEST_CASE("trajectory files round-trip bitwise", "[io]") {
    const fs::path path = scratch_dir() / "traj_roundtrip.csv";
    const trajectory traj = awkward_trajectory();
    io::write_trajectory_csv(path.string(), traj);
    const trajectory back = io::read_trajectory_csv(path.string());

    REQUIRE(back.samples.size() == traj.samples.size());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        CHECK(back.samples[i].tau == traj.samples[i].tau);
        CHECK(back.samples[i].S == traj.samples[i].S);
        CHECK(back.samples[i].I == traj.samples[i].I);
        CHECK(back.samples[i].p == traj.samples[i].p);
    }
    CHECK(back.tau0 == 2.0);
}

TEST_CASE("trajectory reader reports malformed files precisely", "[io]") {
    const fs::path dir = scratch_dir();

    const fs::path bad_header = dir / "bad_header.csv";
    std::ofstream(bad_header) << "tau,S,I,P\n";
    CHECK_THROWS_WITH(io::read_trajectory_csv(bad_header.string()),
                      Catch::Matchers::ContainsSubstring("line 1"));

    const fs::path bad_number = dir / "bad_number.csv";
    std::ofstream(bad_number) << io::k_trajectory_header << "\n1,0,0,zero,0,0\n";
    CHECK_THROWS_WITH(io::read_trajectory_csv(bad_number.string()),
                      Catch::Matchers::ContainsSubstring("line 2: bad number 'zero'"));

    const fs::path bad_fields = dir / "bad_fields.csv";
    std::ofstream(bad_fields) << io::k_trajectory_header << "\n1,0,0\n";
    CHECK_THROWS_WITH(io::read_trajectory_csv(bad_fields.string()),
                      Catch::Matchers::ContainsSubstring("expected 6 fields, got 3"));

    CHECK_THROWS_AS(io::read_trajectory_csv((dir / "missing.csv").string()), io::io_error);
}

TEST_CASE("sweep tables round-trip with and without the analytic column", "[io]") {
    sweep_result res;
    res.spec.lambda = 10.0;
    res.spec.n = 2;
    res.spec.eta_grid = {0.0, 0.5};
    sweep_row r0;
    r0.eta = 0.0;
    r0.p = 0.73042;
    r0.fidelity = 1.0 - r0.p;
    r0.crossings = {0.0};
    sweep_row r1;
    r1.eta = 0.5;
    r1.p = 1.0 / 3.0;
    r1.fidelity = 1.0 - r1.p;
    r1.crossings = {-2.0, 0.0, 2.0};
    res.rows = {r0, r1};

    const fs::path plain = scratch_dir() / "sweep_plain.csv";
    io::write_sweep_csv(plain.string(), res);
    const auto rows = io::read_sweep_csv(plain.string());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].eta == 0.0);
    CHECK(rows[0].p == 0.73042);
    CHECK_FALSE(rows[0].has_analytic);
    CHECK(rows[1].p == 1.0 / 3.0); // bitwise through the file
    CHECK((rows[1].crossings == std::vector<double>{-2.0, 0.0, 2.0}));

    const fs::path oracle = scratch_dir() / "sweep_oracle.csv";
    io::write_sweep_csv(oracle.string(), res, "quadratic_exact", {0.73042, 0.53});
    const auto orows = io::read_sweep_csv(oracle.string());
    REQUIRE(orows.size() == 2);
    CHECK(orows[0].has_analytic);
    CHECK(orows[0].analytic == 0.73042);
    CHECK(orows[1].analytic == 0.53);

    CHECK_THROWS_AS(io::write_sweep_csv(oracle.string(), res, "quadratic_exact", {1.0}),
                    io::io_error); // column size mismatch
}

TEST_CASE("sweep reader validates structure", "[io]") {
    const fs::path dir = scratch_dir();

    const fs::path bad = dir / "sweep_bad_count.csv";
    std::ofstream(bad) << "eta,P,fidelity,n_crossings,crossing_locations\n"
                       << "0,0.5,0.5,2,0\n"; // claims 2 crossings, lists 1
    CHECK_THROWS_WITH(io::read_sweep_csv(bad.string()),
                      Catch::Matchers::ContainsSubstring("n_crossings disagrees"));

    const fs::path not_sweep = dir / "not_sweep.csv";
    std::ofstream(not_sweep) << "x,y\n";
    CHECK_THROWS_WITH(io::read_sweep_csv(not_sweep.string()),
                      Catch::Matchers::ContainsSubstring("not a sweep table header"));

    const fs::path empty = dir / "empty.csv";
    std::ofstream(empty).flush();
    CHECK_THROWS_WITH(io::read_sweep_csv(empty.string()),
                      Catch::Matchers::ContainsSubstring("empty file"));
}

TEST_CASE("svg plots are valid, clamped and deterministic", "[io][plot]") {
    const fs::path dir = scratch_dir();
    const fs::path a = dir / "plot_a.svg";
    const fs::path b = dir / "plot_b.svg";
    const trajectory traj = awkward_trajectory();

    svg::write_plot(a.string(), traj, "test pulse");
    svg::write_plot(b.string(), traj, "test pulse");
    const std::string sa = slurp(a);
    CHECK(sa == slurp(b)); // byte-identical reruns
    CHECK(sa.starts_with("<svg"));
    CHECK(sa.find("<polyline") != std::string::npos);
    CHECK(sa.find("test pulse") != std::string::npos);

    // P axis clamps at 1.05 even when a sample overshoots
    trajectory hot = traj;
    hot.samples[1].p = 7.5;
    const fs::path c = dir / "plot_hot.svg";
    CHECK_NOTHROW(svg::write_plot(c.string(), hot));

    CHECK_THROWS_WITH(svg::write_plot((dir / "plot_empty.svg").string(), trajectory{}),
                      Catch::Matchers::ContainsSubstring("empty trajectory"));
}
