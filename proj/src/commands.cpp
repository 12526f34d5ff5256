#include "ecsim/commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ecsim/errors.hpp"

namespace ecsim {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string format_complex_json(cplx value) {
  return "[" + format_double(value.real()) + ", " + format_double(value.imag()) + "]";
}

// Write-temp-then-rename keeps partially written outputs invisible.
void atomic_write(const fs::path& file, const std::string& content) {
  fs::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out << content;
  }
  fs::rename(tmp, file);
}

int single_subspace_energy(const RunConfig& config) {
  if (!config.subspace.single_energy) {
    throw ConfigError("this command needs subspace.N (a single energy)");
  }
  return *config.subspace.single_energy;
}

void require_two_modes(const RunConfig& config) {
  if (config.harmonics.size() != 1) {
    throw ConfigError("this command needs a two-mode ladder (exactly one harmonic)");
  }
}

}  // namespace

ProjectReport run_project(const RunConfig& config) {
  require_two_modes(config);
  const int energy = single_subspace_energy(config);
  const ModeLadder ladder = config.ladder();
  const std::vector<int> truncations = config.mode_truncations();

  const SubspaceBasis basis = enumerate_energy_basis(energy, ladder, truncations);
  if (basis.tuples.empty()) {
    throw ZeroSupportError("project: energy subspace is empty within truncations");
  }

  const MultiModeState state =
      product_coherent_state(config.mode_amplitudes(), ladder, truncations);
  const MultiModeState projected = project(state, basis);

  ProjectReport report;
  report.total_energy = energy;
  report.ladder_energies = ladder.energies();
  report.tuples = basis.tuples;
  for (const Occupation& t : basis.tuples) {
    report.coefficients.push_back(projected.amplitude(t));
  }
  report.subspace_probability = projected.squared_norm();
  report.mixture = reduce_ir_diagonal(state, basis);
  report.delta_n_ir = photon_loss(report.mixture, energy, config.harmonics[0]);
  report.mean_n_ir = mean_photon_number(report.mixture);
  return report;
}

void write_project_report(const ProjectReport& report, const fs::path& file) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"total_energy\": " << report.total_energy << ",\n";
  out << "  \"ladder\": [";
  for (size_t i = 0; i < report.ladder_energies.size(); ++i) {
    out << (i ? ", " : "") << report.ladder_energies[i];
  }
  out << "],\n";
  out << "  \"tuples\": [";
  for (size_t i = 0; i < report.tuples.size(); ++i) {
    out << (i ? ", [" : "[");
    for (size_t m = 0; m < report.tuples[i].size(); ++m) {
      out << (m ? ", " : "") << report.tuples[i][m];
    }
    out << "]";
  }
  out << "],\n";
  out << "  \"coefficients\": [";
  for (size_t i = 0; i < report.coefficients.size(); ++i) {
    out << (i ? ", " : "") << format_complex_json(report.coefficients[i]);
  }
  out << "],\n";
  out << "  \"subspace_probability\": " << format_double(report.subspace_probability)
      << ",\n";
  out << "  \"ir_probabilities\": {";
  bool first = true;
  for (const auto& [n, p] : report.mixture.probabilities) {
    out << (first ? "" : ", ") << "\"" << n << "\": " << format_double(p);
    first = false;
  }
  out << "},\n";
  out << "  \"delta_n_ir\": " << format_double(report.delta_n_ir) << ",\n";
  out << "  \"mean_n_ir\": " << format_double(report.mean_n_ir) << "\n";
  out << "}\n";
  atomic_write(file, out.str());
}

FockVector conditioned_state(const RunConfig& config) {
  require_two_modes(config);
  if (!config.conditioning) {
    throw ConfigError("missing conditioning section (q, n_q)");
  }
  const ModeLadder ladder = config.ladder();
  const std::vector<int> truncations = config.mode_truncations();
  const MultiModeState state =
      product_coherent_state(config.mode_amplitudes(), ladder, truncations);

  const int center = config.subspace.center_energy
                         ? *config.subspace.center_energy
                         : single_subspace_energy(config);
  const int half_width =
      config.subspace.center_energy ? config.subspace.half_width : 0;
  const MultiModeState selected = windowed_project(state, center, half_width);

  const FockVector raw =
      condition_on_harmonic(selected, 1, config.conditioning->photon_count);
  if (raw.is_zero() || raw.amplitudes.empty()) {
    throw ZeroSupportError("conditioned state is the zero vector");
  }
  return raw.normalized();
}

WignerGrid run_wigner(const RunConfig& config, bool slice) {
  const std::vector<double> re_axis =
      linspace(config.grid.re_min, config.grid.re_max, config.grid.re_points);
  const std::vector<double> im_axis =
      slice ? std::vector<double>{0.0}
            : linspace(config.grid.im_min, config.grid.im_max, config.grid.im_points);

  if (config.wigner_source == "mixture") {
    require_two_modes(config);
    const int energy = single_subspace_energy(config);
    const ModeLadder ladder = config.ladder();
    const std::vector<int> truncations = config.mode_truncations();
    const SubspaceBasis basis = enumerate_energy_basis(energy, ladder, truncations);
    if (basis.tuples.empty()) {
      throw ZeroSupportError("wigner: energy subspace is empty within truncations");
    }
    const MultiModeState state =
        product_coherent_state(config.mode_amplitudes(), ladder, truncations);
    const DiagonalMixture mixture = reduce_ir_diagonal(state, basis);
    return wigner_of_diagonal_mixture(mixture, re_axis, im_axis);
  }
  return wigner_of_fock_vector(conditioned_state(config), re_axis, im_axis);
}

void write_wigner_csv(const WignerGrid& grid, const fs::path& file) {
  std::ostringstream out;
  const bool slice = grid.im_axis.size() == 1 && grid.im_axis[0] == 0.0;
  if (slice) {
    out << "re,w\n";
    for (size_t j = 0; j < grid.re_axis.size(); ++j) {
      out << format_double(grid.re_axis[j]) << "," << format_double(grid.values[j])
          << "\n";
    }
  } else {
    out << "re,im,w\n";
    for (size_t i = 0; i < grid.im_axis.size(); ++i) {
      for (size_t j = 0; j < grid.re_axis.size(); ++j) {
        out << format_double(grid.re_axis[j]) << "," << format_double(grid.im_axis[i])
            << "," << format_double(grid.values[i * grid.re_axis.size() + j]) << "\n";
      }
    }
  }
  atomic_write(file, out.str());
}

FidelityRecord run_fidelity(const RunConfig& config, bool optimize,
                            bool complex_amplitudes) {
  require_two_modes(config);
  if (!config.conditioning) {
    throw ConfigError("missing conditioning section (q, n_q)");
  }

  FidelityRecord record;
  record.alpha = config.alpha;
  record.delta_alpha = config.delta_alpha;
  record.window = config.window();
  record.harmonic_order = config.conditioning->harmonic_order;
  record.photon_count = config.conditioning->photon_count;

  record.analytic =
      fidelity_analytic(config.alpha, config.delta_alpha, record.window,
                        record.harmonic_order, record.photon_count);

  const FockVector phi = conditioned_state(config);
  const int cat_cutoff =
      default_coherent_cutoff(std::abs(config.alpha) + std::abs(config.delta_alpha));
  const FockVector matched_cat =
      cat_state_vector(config.alpha, config.delta_alpha, cat_cutoff).normalized();
  record.matched_bruteforce = fidelity_bruteforce(matched_cat, phi);

  if (optimize) {
    CatSearchOptions options;
    options.complex_amplitudes = complex_amplitudes;
    record.optimum = optimize_cat(phi, options);
  }
  return record;
}

void write_fidelity_report(const FidelityRecord& record, const fs::path& file) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"alpha\": " << format_complex_json(record.alpha) << ",\n";
  out << "  \"delta_alpha\": " << format_complex_json(record.delta_alpha) << ",\n";
  out << "  \"window\": [";
  for (size_t i = 0; i < record.window.size(); ++i) {
    out << (i ? ", " : "") << record.window[i];
  }
  out << "],\n";
  out << "  \"q\": " << record.harmonic_order << ",\n";
  out << "  \"n_q\": " << record.photon_count << ",\n";
  out << "  \"fidelity_analytic\": " << format_double(record.analytic.fidelity)
      << ",\n";
  out << "  \"lower_bound\": " << format_double(record.analytic.lower_bound) << ",\n";
  out << "  \"upper_bound\": " << format_double(record.analytic.upper_bound) << ",\n";
  out << "  \"delta_p\": " << format_complex_json(record.analytic.delta_p) << ",\n";
  out << "  \"xi\": " << format_complex_json(record.analytic.xi) << ",\n";
  out << "  \"window_probability\": "
      << format_double(record.analytic.window_probability) << ",\n";
  out << "  \"fidelity_bruteforce_matched\": "
      << format_double(record.matched_bruteforce);
  if (record.optimum) {
    const CatOptimum& opt = *record.optimum;
    out << ",\n  \"optimum\": {\n";
    out << "    \"beta\": " << format_complex_json(opt.beta) << ",\n";
    out << "    \"delta_beta\": " << format_complex_json(opt.delta_beta) << ",\n";
    out << "    \"fidelity\": " << format_double(opt.fidelity) << ",\n";
    out << "    \"restarts\": " << opt.restarts << ",\n";
    out << "    \"total_iterations\": " << opt.total_iterations << ",\n";
    out << "    \"all_converged\": " << (opt.all_converged ? "true" : "false") << "\n";
    out << "  }";
  }
  out << "\n}\n";
  atomic_write(file, out.str());
}

namespace {

RunConfig fig2_config() {
  RunConfig cfg;
  cfg.alpha = 2.5;
  cfg.delta_alpha = -0.1;
  cfg.harmonics = {5};
  cfg.chi[5] = 0.1;
  cfg.subspace.center_energy = 10;
  cfg.subspace.half_width = 1;
  cfg.conditioning = ConditioningSpec{5, 2};
  cfg.wigner_source = "conditioned";
  return cfg;
}

std::string gnuplot_slice_script(const std::vector<std::string>& csv_names,
                                 const std::string& png_name) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set xlabel 'Re(beta)'\n";
  out << "set ylabel 'W'\n";
  out << "set terminal pngcairo size 900,600\n";
  out << "set output '" << png_name << "'\n";
  out << "plot ";
  for (size_t i = 0; i < csv_names.size(); ++i) {
    out << (i ? ", " : "") << "'" << csv_names[i]
        << "' using 1:2 with lines title '" << csv_names[i] << "'";
  }
  out << "\n";
  return out.str();
}

std::string gnuplot_map_script(const std::string& csv_name,
                               const std::string& png_name) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set xlabel 'Re(beta)'\n";
  out << "set ylabel 'Im(beta)'\n";
  out << "set view map\n";
  out << "set terminal pngcairo size 800,700\n";
  out << "set output '" << png_name << "'\n";
  out << "splot '" << csv_name << "' using 1:2:3 with pm3d notitle\n";
  return out.str();
}

}  // namespace

std::vector<fs::path> repro_fig1(const fs::path& out_dir, int harmonic_order,
                                 bool gnuplot) {
  struct Entry {
    int energy;
    double alpha, delta_alpha, chi;
  };
  const Entry entries[] = {
      {3, 1.2, -0.3, 0.1}, {8, 4.2, -1.3, 0.3}, {15, 5.2, -2.3, 0.8}};

  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  std::vector<std::string> csv_names;

  for (const Entry& e : entries) {
    RunConfig cfg;
    cfg.alpha = e.alpha;
    cfg.delta_alpha = e.delta_alpha;
    cfg.harmonics = {harmonic_order};
    cfg.chi[harmonic_order] = e.chi;
    cfg.subspace.single_energy = e.energy;
    cfg.wigner_source = "mixture";

    const WignerGrid slice = run_wigner(cfg, /*slice=*/true);
    const std::string name = "fig1_N" + std::to_string(e.energy) + ".csv";
    write_wigner_csv(slice, out_dir / name);
    written.push_back(out_dir / name);
    csv_names.push_back(name);
  }

  std::ostringstream manifest;
  manifest << "{\n  \"figure\": \"fig1\",\n  \"harmonic_order\": " << harmonic_order
           << ",\n  \"parameter_sets\": [\n";
  for (size_t i = 0; i < 3; ++i) {
    const Entry& e = entries[i];
    manifest << "    {\"N\": " << e.energy << ", \"alpha\": " << format_double(e.alpha)
             << ", \"delta_alpha\": " << format_double(e.delta_alpha)
             << ", \"chi\": " << format_double(e.chi) << "}" << (i + 1 < 3 ? "," : "")
             << "\n";
  }
  manifest << "  ]\n}\n";
  atomic_write(out_dir / "fig1_manifest.json", manifest.str());
  written.push_back(out_dir / "fig1_manifest.json");

  if (gnuplot) {
    atomic_write(out_dir / "fig1.gp", gnuplot_slice_script(csv_names, "fig1.png"));
    written.push_back(out_dir / "fig1.gp");
  }
  return written;
}

std::vector<fs::path> repro_fig2(const fs::path& out_dir, bool gnuplot) {
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  const RunConfig cfg = fig2_config();
  const WignerGrid grid = run_wigner(cfg, /*slice=*/false);
  write_wigner_csv(grid, out_dir / "fig2_wigner.csv");
  written.push_back(out_dir / "fig2_wigner.csv");

  const FidelityRecord record =
      run_fidelity(cfg, /*optimize=*/true, /*complex_amplitudes=*/false);
  write_fidelity_report(record, out_dir / "fig2_fidelity.json");
  written.push_back(out_dir / "fig2_fidelity.json");

  std::ostringstream manifest;
  manifest << "{\n  \"figure\": \"fig2\",\n"
           << "  \"alpha\": " << format_double(2.5) << ",\n"
           << "  \"delta_alpha\": " << format_double(-0.1) << ",\n"
           << "  \"chi_5\": " << format_double(0.1) << ",\n"
           << "  \"N0\": 10,\n  \"delta_N\": 1,\n  \"q\": 5,\n  \"n_q\": 2\n}\n";
  atomic_write(out_dir / "fig2_manifest.json", manifest.str());
  written.push_back(out_dir / "fig2_manifest.json");

  if (gnuplot) {
    atomic_write(out_dir / "fig2.gp",
                 gnuplot_map_script("fig2_wigner.csv", "fig2.png"));
    written.push_back(out_dir / "fig2.gp");
  }
  return written;
}

}  // namespace ecsim
