#pragma once

#include <map>

#include "ecsim/fockspace.hpp"

namespace ecsim {

/// All occupation tuples whose total energy equals total_energy exactly,
/// within per-mode truncations. Spans the projector onto that subspace.
struct SubspaceBasis {
  int total_energy = 0;
  std::vector<Occupation> tuples;
  ModeLadder ladder{std::vector<int>{1}};
};

/// Exhaustive, duplicate-free enumeration of the energy-N occupation tuples.
/// For a two-mode ladder (1, q) the tuples are (N - q n_q, n_q) with n_q
/// ascending. An empty basis is valid output.
SubspaceBasis enumerate_energy_basis(int total_energy, const ModeLadder& ladder,
                                     const std::vector<int>& truncations);

/// Recomputes the tuple energies and returns the common value; throws
/// InconsistentBasisError if any tuple disagrees.
int subspace_energy(const SubspaceBasis& basis);

/// Restriction of the state to the basis tuples. Unnormalized; the squared
/// norm of the result is the subspace probability P^(N).
MultiModeState project(const MultiModeState& state, const SubspaceBasis& basis);

/// Sum of the projections onto every integer energy in
/// [center_energy - half_width, center_energy + half_width]. The subspaces
/// are orthogonal, so this is itself a projection. Unnormalized.
MultiModeState windowed_project(const MultiModeState& state, int center_energy,
                                int half_width);

/// Applies <n_q| at mode_index of a two-mode state and returns the
/// unnormalized vector of the remaining mode. A zero vector (empty result)
/// is a valid outcome, reported through FockVector::is_zero().
FockVector condition_on_harmonic(const MultiModeState& state, int mode_index,
                                 int n_q);

/// Photon-number statistics of the IR mode after projection, diagonal in
/// the number basis.
struct DiagonalMixture {
  std::map<int, double> probabilities;  // IR photon number -> probability
  double norm_probability = 0.0;        // P^(N), the subspace probability
};

/// Partial trace of the projected state over the harmonic mode of a
/// two-mode state: probabilities |c_{N-q n_q, n_q}|^2 / P^(N) attached to IR
/// photon number N - q n_q. Throws UndefinedMixtureError when P^(N) = 0.
DiagonalMixture reduce_ir_diagonal(const MultiModeState& state,
                                   const SubspaceBasis& basis);

/// Mean number of IR photons absorbed within the subspace,
/// sum of probability * q n_q; satisfies <n_IR> = N - result.
double photon_loss(const DiagonalMixture& mixture, int total_energy,
                   int harmonic_order);

/// sum p(n) * n over IR outcomes.
double mean_photon_number(const DiagonalMixture& mixture);

}  // namespace ecsim
