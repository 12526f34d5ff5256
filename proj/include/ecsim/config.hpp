#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "ecsim/fockspace.hpp"

namespace ecsim {

struct GridSpec {
  double re_min = -6.0;
  double re_max = 6.0;
  int re_points = 401;
  double im_min = -6.0;
  double im_max = 6.0;
  int im_points = 401;
};

struct SubspaceSpec {
  std::optional<int> single_energy;  // project onto one subspace N
  std::optional<int> center_energy;  // or a window N0 +- delta_N
  int half_width = 0;
};

struct ConditioningSpec {
  int harmonic_order = 0;  // q
  int photon_count = 0;    // n_q
};

/// Parameters of one run, parsed from a JSON config file.
struct RunConfig {
  cplx alpha{};
  cplx delta_alpha{};
  std::map<int, cplx> chi;    // harmonic order -> amplitude
  std::vector<int> harmonics; // ladder orders (IR mode implied)
  SubspaceSpec subspace;
  std::optional<ConditioningSpec> conditioning;
  GridSpec grid;
  std::string wigner_source = "conditioned";  // "mixture" | "conditioned"
  std::optional<int> ir_truncation;
  std::map<int, int> harmonic_truncations;

  ModeLadder ladder() const;
  std::vector<cplx> mode_amplitudes() const;  // (alpha + delta_alpha, chi...)
  std::vector<int> mode_truncations() const;
  /// Consecutive energies of the configured subspace or window.
  std::vector<int> window() const;
};

/// Parses and validates a config file; throws ConfigError on any problem.
RunConfig load_config(const std::filesystem::path& file);
RunConfig parse_config(const std::string& text);

}  // namespace ecsim
