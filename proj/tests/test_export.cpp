#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dephase/config_file.hpp"
#include "dephase/errors.hpp"
#include "dephase/export_csv.hpp"
#include "dephase/export_svg.hpp"
#include "dephase/runner.hpp"

namespace fs = std::filesystem;
using dephase::Trajectory;
using dephase::TrajectoryRow;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

Trajectory tiny_trajectory() {
    Trajectory t;
    TrajectoryRow r;
    r.t = 0.0;
    r.gamma = {1.0, 0.0};
    r.abs_gamma = 1.0;
    r.trace_distance = 1.0;
    t.rows.push_back(r);
    r.t = M_PI;
    r.gamma = {0.123456789012345678, -1e-300};
    r.abs_gamma = std::abs(r.gamma);
    r.q_mean = -0.0;
    r.c_coherent = 1.0 / 3.0;
    r.w_mean = 6.02214076e23;
    r.trace_distance = r.abs_gamma;
    r.sigma = -2.2250738585072014e-308; // smallest normal
    r.identity_residual = 5e-16;
    t.rows.push_back(r);
    r.t = 2 * M_PI;
    t.rows.push_back(r);
    return t;
}

} // namespace

TEST_CASE("csv header is pinned") {
    CHECK(dephase::csv_header() ==
          "t,re_gamma,im_gamma,abs_gamma,q_mean,c_coherent,w_mean,"
          "trace_distance,sigma,identity_residual");
}

TEST_CASE("empty trajectory gives a header-only file") {
    const auto path = temp_file("dephase_empty.csv");
    dephase::export_csv(Trajectory{}, path.string());
    CHECK(slurp(path.string()) == dephase::csv_header() + "\n");
}

TEST_CASE("three samples give four lines") {
    const auto path = temp_file("dephase_three.csv");
    dephase::export_csv(tiny_trajectory(), path.string());
    const std::string text = slurp(path.string());
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("csv round-trip is bit-identical") {
    const auto path = temp_file("dephase_roundtrip.csv");
    const Trajectory original = tiny_trajectory();
    dephase::export_csv(original, path.string());
    const auto parsed = dephase::read_csv(path.string());
    REQUIRE(parsed.size() == original.rows.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const TrajectoryRow& a = original.rows[i];
        const TrajectoryRow& b = parsed[i];
        const double lhs[10] = {a.t,      a.gamma.real(), a.gamma.imag(),
                                a.abs_gamma, a.q_mean,   a.c_coherent,
                                a.w_mean, a.trace_distance, a.sigma,
                                a.identity_residual};
        const double rhs[10] = {b.t,      b.gamma.real(), b.gamma.imag(),
                                b.abs_gamma, b.q_mean,   b.c_coherent,
                                b.w_mean, b.trace_distance, b.sigma,
                                b.identity_residual};
        CHECK(std::memcmp(lhs, rhs, sizeof lhs) == 0);
    }
}

TEST_CASE("csv output is deterministic") {
    const auto p1 = temp_file("dephase_det1.csv");
    const auto p2 = temp_file("dephase_det2.csv");
    dephase::export_csv(tiny_trajectory(), p1.string());
    dephase::export_csv(tiny_trajectory(), p2.string());
    CHECK(slurp(p1.string()) == slurp(p2.string()));
}

TEST_CASE("svg fig4 carries both series on two axes") {
    const auto path = temp_file("dephase_fig4.svg");
    Trajectory t = tiny_trajectory();
    t.rows[0].sigma = 0.0;
    t.rows[1].sigma = 0.4;
    t.rows[2].sigma = -0.4;
    dephase::export_svg_fig4(t, path.string());
    const std::string svg = slurp(path.string());
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    CHECK(svg.find("sigma_S(t)") != std::string::npos);
    CHECK(svg.find("|Gamma(t)|") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    const std::size_t first = svg.find("<polyline");
    CHECK(first != std::string::npos);
    CHECK(svg.find("<polyline", first + 1) != std::string::npos);
}

TEST_CASE("single-sample series does not crash the plotter") {
    const auto path = temp_file("dephase_single.svg");
    Trajectory t;
    TrajectoryRow r;
    r.t = 1.0;
    r.abs_gamma = 1.0;
    t.rows.push_back(r);
    dephase::export_svg_fig5(t, path.string());
    CHECK(slurp(path.string()).find("</svg>") != std::string::npos);
}

TEST_CASE("fig2 without a sweep is a missing series") {
    Trajectory t = tiny_trajectory();
    CHECK_THROWS_AS(dephase::export_svg_fig2({&t}, temp_file("x.svg").string()),
                    dephase::MissingSeriesError);
}

TEST_CASE("config file parsing") {
    const auto path = temp_file("dephase_cfg.txt");
    {
        std::ofstream f(path);
        f << "# comment line\n"
          << "n_spins = 5\n"
          << "g = 0.3   # trailing comment\n"
          << "\n"
          << "sweep_g = 0.1, 0.3 ,0.5\n"
          << "emit = csv,svg\n"
          << "oracle = off\n";
    }
    const auto entries = dephase::parse_config_file(path.string());
    dephase::RunConfig cfg;
    for (const auto& [k, v] : entries) dephase::apply_config_key(cfg, k, v);
    CHECK(cfg.params.n_spins == 5);
    CHECK(cfg.params.g0 == 0.3);
    CHECK(cfg.params.g1 == 0.3);
    REQUIRE(cfg.sweep_g.size() == 3);
    CHECK(cfg.sweep_g[1] == 0.3);
    CHECK(cfg.emit_csv);
    CHECK(cfg.emit_svg);
    CHECK_FALSE(cfg.emit_identity_report);
    CHECK(cfg.oracle == dephase::OracleMode::off);
}

TEST_CASE("flag value overrides a file value") {
    dephase::RunConfig cfg;
    dephase::apply_config_key(cfg, "samples", "101"); // from file
    dephase::apply_config_key(cfg, "samples", "51");  // from flag, applied later
    CHECK(cfg.n_samples == 51);
}

TEST_CASE("config rejects unknown keys and bad values") {
    dephase::RunConfig cfg;
    CHECK_THROWS_WITH_AS(dephase::apply_config_key(cfg, "n_spin", "3"),
                         doctest::Contains("n_spin"), dephase::ConfigError);
    CHECK_THROWS_AS(dephase::apply_config_key(cfg, "beta", "warm"),
                    dephase::ConfigError);
    CHECK_THROWS_AS(dephase::apply_config_key(cfg, "oracle", "maybe"),
                    dephase::ConfigError);
    CHECK_THROWS_AS(dephase::apply_config_key(cfg, "sweep_n", " , "),
                    dephase::ConfigError);
    CHECK_THROWS_AS(dephase::apply_config_key(cfg, "fig", "7"),
                    dephase::ConfigError);
}

TEST_CASE("run config validation") {
    dephase::RunConfig cfg;
    cfg.t_max = -1.0;
    CHECK_THROWS_AS(cfg.validate(), dephase::ConfigError);
    cfg = {};
    cfg.n_samples = 2;
    CHECK_THROWS_AS(cfg.validate(), dephase::ConfigError);
    cfg = {};
    cfg.sweep_n = {0};
    CHECK_THROWS_AS(cfg.validate(), dephase::ConfigError);
}

TEST_CASE("local extrema with prominence") {
    const std::vector<double> y = {0.0, 1.0, 0.0, 0.2, 0.1, 2.0, -1.0};
    const auto maxima = dephase::local_maxima(y, 0.15);
    REQUIRE(maxima.size() == 2);
    CHECK(maxima[0] == 1);
    CHECK(maxima[1] == 5);
    // The bump at index 3 has prominence 0.1 only.
    CHECK(dephase::local_maxima(y, 0.05).size() == 3);

    const auto minima = dephase::local_minima(y, 0.15);
    REQUIRE(minima.size() == 1);
    CHECK(minima[0] == 2);
}
