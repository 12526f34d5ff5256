#pragma once

#include <filesystem>

#include "ecsim/catfidelity.hpp"
#include "ecsim/config.hpp"
#include "ecsim/phasespace.hpp"
#include "ecsim/subspace.hpp"

namespace ecsim {

/// Subspace projection record for one conserved energy: basis tuples and
/// coefficients, subspace probability, photon bookkeeping.
struct ProjectReport {
  int total_energy = 0;
  std::vector<int> ladder_energies;
  std::vector<Occupation> tuples;
  std::vector<cplx> coefficients;
  double subspace_probability = 0.0;
  DiagonalMixture mixture;
  double delta_n_ir = 0.0;
  double mean_n_ir = 0.0;
};

ProjectReport run_project(const RunConfig& config);
void write_project_report(const ProjectReport& report,
                          const std::filesystem::path& file);

/// Wigner data for the configured source; slice restricts to Im(beta) = 0.
WignerGrid run_wigner(const RunConfig& config, bool slice);
void write_wigner_csv(const WignerGrid& grid, const std::filesystem::path& file);

/// The conditioned IR state of the configured window, normalized.
FockVector conditioned_state(const RunConfig& config);

struct FidelityRecord {
  cplx alpha{};
  cplx delta_alpha{};
  std::vector<int> window;
  int harmonic_order = 0;
  int photon_count = 0;
  FidelityReport analytic;
  double matched_bruteforce = 0.0;  // truncated-vector cross-check
  std::optional<CatOptimum> optimum;
};

FidelityRecord run_fidelity(const RunConfig& config, bool optimize,
                            bool complex_amplitudes);
void write_fidelity_report(const FidelityRecord& record,
                           const std::filesystem::path& file);

/// Rewrites the bundled figure datasets; returns the files written.
std::vector<std::filesystem::path> repro_fig1(const std::filesystem::path& out_dir,
                                              int harmonic_order = 3,
                                              bool gnuplot = false);
std::vector<std::filesystem::path> repro_fig2(const std::filesystem::path& out_dir,
                                              bool gnuplot = false);

/// Formats a double with 17 significant digits (exact round trip).
std::string format_double(double value);

}  // namespace ecsim
