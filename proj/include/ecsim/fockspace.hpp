#pragma once

#include <complex>
#include <map>
#include <vector>

namespace ecsim {

using cplx = std::complex<double>;
using Occupation = std::vector<int>;

// Stored multimode amplitudes below this magnitude are dropped.
inline constexpr double kPruneThreshold = 1e-15;

/// Per-photon energies of the field modes in units of the fundamental
/// frequency. Entry 0 is the driving (IR) mode with energy 1; the remaining
/// entries are harmonic orders, strictly increasing.
class ModeLadder {
 public:
  explicit ModeLadder(std::vector<int> energies);

  int modes() const { return static_cast<int>(energies_.size()); }
  int energy(int mode) const { return energies_.at(static_cast<size_t>(mode)); }
  const std::vector<int>& energies() const { return energies_; }

  /// Total energy of an occupation tuple, exact integer arithmetic.
  long long tuple_energy(const Occupation& occ) const;

  bool operator==(const ModeLadder&) const = default;

 private:
  std::vector<int> energies_;
};

/// Complex amplitudes of one mode over the truncated number basis;
/// index n is the photon number.
struct FockVector {
  std::vector<cplx> amplitudes;

  int n_max() const { return static_cast<int>(amplitudes.size()) - 1; }
  double squared_norm() const;
  bool is_zero() const;
  bool is_normalized(double eps = 1e-9) const;
  FockVector normalized() const;
};

/// sum_n conj(a_n) b_n; the shorter vector is zero-padded.
cplx inner_product(const FockVector& a, const FockVector& b);

/// Truncation holding the Poisson tail of |alpha> below 1e-10 of the norm
/// for |alpha| <= 6: max(16, ceil(|alpha|^2 + 8 sqrt(|alpha|^2 + 1))).
int default_coherent_cutoff(double amplitude_magnitude);
int default_coherent_cutoff(cplx alpha);

/// Truncated coherent-state expansion c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
/// The captured norm is the output's squared_norm().
FockVector coherent_amplitudes(cplx alpha, int n_max);

/// Basis vector |n> padded to n_max.
FockVector fock_basis_vector(int n, int n_max);

/// <alpha|gamma> = exp(-|alpha|^2/2 - |gamma|^2/2 + conj(alpha) gamma),
/// closed form with no truncation error.
cplx coherent_overlap(cplx alpha, cplx gamma);

/// Sparse complex amplitudes indexed by occupation tuples across the modes
/// of a ladder. Immutable after construction.
class MultiModeState {
 public:
  using TermMap = std::map<Occupation, cplx>;

  explicit MultiModeState(ModeLadder ladder) : ladder_(std::move(ladder)) {}

  /// Takes ownership of a term map; amplitudes below the pruning threshold
  /// are dropped, and every tuple must match the ladder's mode count.
  MultiModeState(ModeLadder ladder, TermMap terms);

  const ModeLadder& ladder() const { return ladder_; }
  const TermMap& terms() const { return terms_; }
  int modes() const { return ladder_.modes(); }

  cplx amplitude(const Occupation& occ) const;
  double squared_norm() const;

 private:
  ModeLadder ladder_;
  TermMap terms_;
};

/// Product of per-mode coherent states as a sparse amplitude map,
/// amp(n0, n1, ...) = prod_m c_{n_m}(alpha_m).
MultiModeState product_coherent_state(const std::vector<cplx>& amplitudes,
                                      const ModeLadder& ladder,
                                      const std::vector<int>& truncations);

}  // namespace ecsim
