#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "ecsim/commands.hpp"
#include "ecsim/errors.hpp"

using namespace ecsim;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path config_dir() { return fs::path(ECSIM_CONFIG_DIR); }

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("ecsim_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ECSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing and validation") {
  CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("{}"), ConfigError);

  // Harmonic referenced by chi but absent from the ladder.
  CHECK_THROWS_AS(parse_config(R"({
    "amplitudes": {"alpha": 1.0, "chi": {"7": 0.1}},
    "ladder": [5]
  })"),
                  ConfigError);

  // Conditioning on a harmonic the ladder does not carry.
  CHECK_THROWS_AS(parse_config(R"({
    "amplitudes": {"alpha": 1.0, "chi": {"5": 0.1}},
    "ladder": [5],
    "subspace": {"N0": 10, "delta_N": 1},
    "conditioning": {"q": 3, "n_q": 1}
  })"),
                  ConfigError);

  // Grid resolution below two points.
  CHECK_THROWS_AS(parse_config(R"({
    "amplitudes": {"alpha": 1.0, "chi": {"5": 0.1}},
    "ladder": [5],
    "grid": {"re_points": 1}
  })"),
                  ConfigError);

  const RunConfig cfg = load_config(config_dir() / "fig2.json");
  CHECK(cfg.alpha == cplx(2.5, 0.0));
  CHECK(cfg.delta_alpha == cplx(-0.1, 0.0));
  CHECK(cfg.window() == std::vector<int>{9, 10, 11});
  CHECK(cfg.ladder().energies() == std::vector<int>{1, 5});
}

TEST_CASE("run_project emits the second-harmonic listings verbatim") {
  const RunConfig cfg2 = load_config(config_dir() / "shg_N2.json");
  const ProjectReport r2 = run_project(cfg2);
  CHECK(r2.tuples == std::vector<Occupation>{{2, 0}, {0, 1}});

  const RunConfig cfg4 = load_config(config_dir() / "shg_N4.json");
  const ProjectReport r4 = run_project(cfg4);
  CHECK(r4.tuples == std::vector<Occupation>{{2, 1}, {0, 2}});
}

TEST_CASE("run_project on the vacuum subspace") {
  const RunConfig cfg = load_config(config_dir() / "vacuum.json");
  const ProjectReport report = run_project(cfg);
  REQUIRE(report.tuples.size() == 1);
  CHECK(report.tuples[0] == Occupation{0, 0});
  // P equals |c_00|^2 of the product state.
  const MultiModeState state = product_coherent_state(
      cfg.mode_amplitudes(), cfg.ladder(), cfg.mode_truncations());
  CHECK(report.subspace_probability == std::norm(state.amplitude({0, 0})));
}

TEST_CASE("run_project bookkeeping matches the identity") {
  const RunConfig cfg = load_config(config_dir() / "fig1_N8.json");
  const ProjectReport report = run_project(cfg);
  CHECK(std::abs(report.mean_n_ir - (8.0 - report.delta_n_ir)) < 1e-12);

  // Pass-through: the emitted numbers are the library's, untouched.
  const MultiModeState state = product_coherent_state(
      cfg.mode_amplitudes(), cfg.ladder(), cfg.mode_truncations());
  const SubspaceBasis basis =
      enumerate_energy_basis(8, cfg.ladder(), cfg.mode_truncations());
  const DiagonalMixture mixture = reduce_ir_diagonal(state, basis);
  CHECK(report.subspace_probability == project(state, basis).squared_norm());
  CHECK(report.delta_n_ir == photon_loss(mixture, 8, 3));
  CHECK(report.mean_n_ir == mean_photon_number(mixture));
}

TEST_CASE("run_wigner vacuum slice equals the Gaussian") {
  RunConfig cfg = load_config(config_dir() / "vacuum.json");
  cfg.grid.re_points = 101;
  const WignerGrid slice = run_wigner(cfg, /*slice=*/true);
  for (size_t j = 0; j < slice.re_axis.size(); ++j) {
    const double x = slice.re_axis[j];
    CHECK(std::abs(slice.values[j] - std::exp(-x * x) / 3.14159265358979324) < 1e-12);
  }
}

TEST_CASE("run_wigner passes the library grid through unchanged") {
  RunConfig cfg = load_config(config_dir() / "fig2.json");
  cfg.grid.re_points = 41;
  cfg.grid.im_points = 41;
  const WignerGrid via_cli = run_wigner(cfg, /*slice=*/false);
  const WignerGrid direct = wigner_of_fock_vector(
      conditioned_state(cfg), linspace(-6, 6, 41), linspace(-6, 6, 41));
  REQUIRE(via_cli.values.size() == direct.values.size());
  for (size_t i = 0; i < direct.values.size(); ++i) {
    CHECK(via_cli.values[i] == direct.values[i]);
  }
}

TEST_CASE("run_wigner rejects a zero conditioned vector") {
  RunConfig cfg = load_config(config_dir() / "fig2.json");
  cfg.conditioning->photon_count = 9;  // beyond any populated occupation
  CHECK_THROWS_AS(run_wigner(cfg, /*slice=*/true), ZeroSupportError);
}

TEST_CASE("run_fidelity record matches the direct library calls") {
  const RunConfig cfg = load_config(config_dir() / "fig2.json");
  const FidelityRecord record = run_fidelity(cfg, /*optimize=*/false, false);
  const FidelityReport direct = fidelity_analytic(2.5, -0.1, {9, 10, 11}, 5, 2);
  CHECK(record.analytic.fidelity == direct.fidelity);
  CHECK(record.analytic.delta_p == direct.delta_p);
  CHECK(record.analytic.lower_bound == direct.lower_bound);
  CHECK(record.analytic.upper_bound == direct.upper_bound);
  CHECK(record.analytic.window_probability == direct.window_probability);
  CHECK(record.analytic.lower_bound <= record.analytic.fidelity + 1e-12);
  CHECK(record.analytic.fidelity <= record.analytic.upper_bound + 1e-12);
}

TEST_CASE("writers are deterministic byte for byte") {
  const fs::path dir = fresh_dir("determinism");
  const RunConfig cfg = load_config(config_dir() / "fig1_N3.json");

  const ProjectReport report = run_project(cfg);
  write_project_report(report, dir / "a.json");
  write_project_report(report, dir / "b.json");
  CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));

  RunConfig slim = cfg;
  slim.grid.re_points = 101;
  const WignerGrid slice = run_wigner(slim, /*slice=*/true);
  write_wigner_csv(slice, dir / "a.csv");
  write_wigner_csv(slice, dir / "b.csv");
  CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));

  const std::string csv = read_file(dir / "a.csv");
  CHECK(csv.rfind("re,w\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("repro bundles are deterministic and negative where expected") {
  const fs::path dir1 = fresh_dir("repro1");
  const fs::path dir2 = fresh_dir("repro2");
  repro_fig1(dir1);
  repro_fig1(dir2);
  for (const char* name : {"fig1_N3.csv", "fig1_N8.csv", "fig1_N15.csv",
                           "fig1_manifest.json"}) {
    CHECK(read_file(dir1 / name) == read_file(dir2 / name));
  }

  // Each slice dips below zero.
  for (const char* name : {"fig1_N3.csv", "fig1_N8.csv", "fig1_N15.csv"}) {
    std::istringstream in(read_file(dir1 / name));
    std::string line;
    std::getline(in, line);  // header
    double min_w = 0.0;
    while (std::getline(in, line)) {
      const size_t comma = line.find(',');
      min_w = std::min(min_w, std::stod(line.substr(comma + 1)));
    }
    CHECK(min_w < 0.0);
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("repro fig2 bundle carries the optimized fidelity") {
  const fs::path dir = fresh_dir("repro_fig2");
  const auto written = repro_fig2(dir);
  CHECK(fs::exists(dir / "fig2_wigner.csv"));
  CHECK(fs::exists(dir / "fig2_manifest.json"));
  const std::string report = read_file(dir / "fig2_fidelity.json");
  const size_t pos = report.find("\"fidelity\": ");
  REQUIRE(pos != std::string::npos);
  const double f_opt = std::stod(report.substr(pos + 12));
  CHECK(f_opt >= 0.996);
  CHECK(f_opt <= 1.0);

  // Grid file header and byte determinism.
  const std::string csv = read_file(dir / "fig2_wigner.csv");
  CHECK(csv.rfind("re,im,w\n", 0) == 0);
  const fs::path again = fresh_dir("repro_fig2_again");
  repro_fig2(again);
  CHECK(read_file(again / "fig2_fidelity.json") == report);
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("cli binary exit codes") {
  const fs::path dir = fresh_dir("cli");

  SUBCASE("success path") {
    const int code = run_cli("project --config " +
                             (config_dir() / "shg_N2.json").string() + " --out " +
                             dir.string());
    CHECK(code == 0);
    CHECK(fs::exists(dir / "project.json"));
  }

  SUBCASE("config parse failure exits 2") {
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{ nope";
    const int code =
        run_cli("project --config " + bad.string() + " --out " + dir.string());
    CHECK(code == 2);
  }

  SUBCASE("degenerate cat exits 3") {
    const int code = run_cli("fidelity --config " +
                             (config_dir() / "degenerate_cat.json").string() +
                             " --out " + dir.string());
    CHECK(code == 3);
  }

  SUBCASE("wigner needs exactly one of slice or grid") {
    const int code = run_cli("wigner --config " +
                             (config_dir() / "fig1_N3.json").string() + " --out " +
                             dir.string());
    CHECK(code == 2);
  }

  fs::remove_all(dir);
}
