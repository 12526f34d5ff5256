#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "ecsim/commands.hpp"
#include "ecsim/errors.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

int guarded(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const ecsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const ecsim::ZeroSupportError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitDomain;
  } catch (const ecsim::DegenerateCatError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitDomain;
  } catch (const ecsim::UndefinedMixtureError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitDomain;
  } catch (const ecsim::OptimizationError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-conserving subspace toolkit for quantum-optical "
               "harmonic generation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool slice = false;
  bool grid = false;
  bool optimize = false;
  bool complex_amplitudes = false;
  bool gnuplot = false;
  int fig1_q = 3;
  std::string figure;

  CLI::App* project = app.add_subcommand(
      "project", "Project the product state onto one energy subspace");
  project->add_option("--config", config_path, "JSON config file")->required();
  project->add_option("--out", out_dir, "output directory");

  CLI::App* wigner = app.add_subcommand(
      "wigner", "Wigner data of the reduced or conditioned state");
  wigner->add_option("--config", config_path, "JSON config file")->required();
  wigner->add_option("--out", out_dir, "output directory");
  wigner->add_flag("--slice", slice, "1-D cut along Im(beta) = 0");
  wigner->add_flag("--grid", grid, "full 2-D map");
  wigner->add_flag("--gnuplot", gnuplot, "also write a gnuplot script");

  CLI::App* fidelity = app.add_subcommand(
      "fidelity", "Cat-state fidelity of the conditioned state");
  fidelity->add_option("--config", config_path, "JSON config file")->required();
  fidelity->add_option("--out", out_dir, "output directory");
  fidelity->add_flag("--optimize", optimize, "search for the best cat amplitudes");
  fidelity->add_flag("--complex-amplitudes", complex_amplitudes,
                     "search complex cat amplitudes (4 parameters)");

  CLI::App* repro = app.add_subcommand(
      "repro", "Regenerate the bundled figure datasets");
  repro->add_option("figure", figure, "fig1 or fig2")->required();
  repro->add_option("--out", out_dir, "output directory");
  repro->add_option("--q", fig1_q, "harmonic order used for fig1 (default 3)");
  repro->add_flag("--gnuplot", gnuplot, "also write gnuplot scripts");

  CLI11_PARSE(app, argc, argv);

  if (project->parsed()) {
    return guarded([&] {
      const ecsim::RunConfig cfg = ecsim::load_config(config_path);
      const ecsim::ProjectReport report = ecsim::run_project(cfg);
      fs::create_directories(out_dir);
      ecsim::write_project_report(report, fs::path(out_dir) / "project.json");
      std::printf("wrote %s\n", (fs::path(out_dir) / "project.json").c_str());
    });
  }

  if (wigner->parsed()) {
    if (slice == grid) {
      std::fprintf(stderr, "config error: pass exactly one of --slice or --grid\n");
      return kExitConfig;
    }
    return guarded([&] {
      const ecsim::RunConfig cfg = ecsim::load_config(config_path);
      const ecsim::WignerGrid data = ecsim::run_wigner(cfg, slice);
      fs::create_directories(out_dir);
      const fs::path file =
          fs::path(out_dir) / (slice ? "wigner_slice.csv" : "wigner_grid.csv");
      ecsim::write_wigner_csv(data, file);
      if (gnuplot) {
        // companion script next to the data
        const std::string script =
            slice ? std::string("set datafile separator ','\nplot '") +
                        file.filename().string() + "' using 1:2 with lines\n"
                  : std::string("set datafile separator ','\nset view map\nsplot '") +
                        file.filename().string() + "' using 1:2:3 with pm3d\n";
        std::ofstream gp(fs::path(out_dir) / (slice ? "wigner_slice.gp" : "wigner_grid.gp"));
        gp << script;
      }
      std::printf("wrote %s\n", file.c_str());
    });
  }

  if (fidelity->parsed()) {
    return guarded([&] {
      const ecsim::RunConfig cfg = ecsim::load_config(config_path);
      const ecsim::FidelityRecord record =
          ecsim::run_fidelity(cfg, optimize, complex_amplitudes);
      fs::create_directories(out_dir);
      ecsim::write_fidelity_report(record, fs::path(out_dir) / "fidelity.json");
      std::printf("wrote %s\n", (fs::path(out_dir) / "fidelity.json").c_str());
    });
  }

  if (repro->parsed()) {
    if (figure != "fig1" && figure != "fig2") {
      std::fprintf(stderr, "config error: figure must be fig1 or fig2\n");
      return kExitConfig;
    }
    return guarded([&] {
      const auto written = figure == "fig1"
                               ? ecsim::repro_fig1(out_dir, fig1_q, gnuplot)
                               : ecsim::repro_fig2(out_dir, gnuplot);
      for (const fs::path& p : written) {
        std::printf("wrote %s\n", p.c_str());
      }
    });
  }
  return kExitOk;
}
