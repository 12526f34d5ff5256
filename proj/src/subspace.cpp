#include "ecsim/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ecsim/errors.hpp"

namespace ecsim {

SubspaceBasis enumerate_energy_basis(int total_energy, const ModeLadder& ladder,
                                     const std::vector<int>& truncations) {
  if (total_energy < 0) {
    throw std::invalid_argument("enumerate_energy_basis: total_energy must be >= 0");
  }
  if (truncations.size() != static_cast<size_t>(ladder.modes())) {
    throw std::invalid_argument("enumerate_energy_basis: one truncation per mode");
  }

  SubspaceBasis basis;
  basis.total_energy = total_energy;
  basis.ladder = ladder;

  const int modes = ladder.modes();
  Occupation occ(static_cast<size_t>(modes), 0);

  // Occupations of the harmonic modes (1..modes-1) are chosen recursively,
  // highest harmonic in the innermost loop; the IR count is the remainder,
  // which always has energy 1. Ascending harmonic counts reproduce the
  // (N, 0), (N - q, 1), ... ordering in the two-mode case.
  auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == 0) {
      if (remaining <= truncations[0]) {
        occ[0] = remaining;
        basis.tuples.push_back(occ);
        occ[0] = 0;
      }
      return;
    }
    const int energy = ladder.energy(mode);
    const int cap = std::min(truncations[static_cast<size_t>(mode)], remaining / energy);
    for (int n = 0; n <= cap; ++n) {
      occ[static_cast<size_t>(mode)] = n;
      self(self, mode - 1, remaining - n * energy);
    }
    occ[static_cast<size_t>(mode)] = 0;
  };

  if (modes == 1) {
    if (total_energy <= truncations[0]) {
      basis.tuples.push_back({total_energy});
    }
  } else {
    recurse(recurse, modes - 1, total_energy);
  }

  // Tuples arrive grouped by harmonic occupations; sort IR-descending so the
  // two-mode listing starts at (N, 0). The recursion above already yields
  // this order for two modes; sorting makes it canonical for any ladder.
  std::sort(basis.tuples.begin(), basis.tuples.end(),
            [](const Occupation& a, const Occupation& b) {
              return std::lexicographical_compare(a.rbegin(), a.rend(),
                                                  b.rbegin(), b.rend());
            });
  return basis;
}

int subspace_energy(const SubspaceBasis& basis) {
  if (basis.tuples.empty()) {
    throw std::invalid_argument("subspace_energy: empty basis");
  }
  const long long expected = basis.total_energy;
  for (const Occupation& t : basis.tuples) {
    if (basis.ladder.tuple_energy(t) != expected) {
      throw InconsistentBasisError(
          "subspace_energy: tuple energy differs from basis energy");
    }
  }
  return basis.total_energy;
}

MultiModeState project(const MultiModeState& state, const SubspaceBasis& basis) {
  if (!(state.ladder() == basis.ladder)) {
    throw LadderMismatchError("project: state and basis ladders differ");
  }
  MultiModeState::TermMap kept;
  for (const Occupation& t : basis.tuples) {
    const cplx amp = state.amplitude(t);
    if (amp != cplx(0.0, 0.0)) {
      kept.emplace(t, amp);
    }
  }
  return MultiModeState(state.ladder(), std::move(kept));
}

MultiModeState windowed_project(const MultiModeState& state, int center_energy,
                                int half_width) {
  if (center_energy < 0 || half_width < 0) {
    throw std::invalid_argument("windowed_project: center and width must be >= 0");
  }
  const long long lo = static_cast<long long>(center_energy) - half_width;
  const long long hi = static_cast<long long>(center_energy) + half_width;

  // Equivalent to summing the projections for each integer energy in the
  // window: the subspaces partition the stored tuples by energy.
  MultiModeState::TermMap kept;
  for (const auto& [occ, amp] : state.terms()) {
    const long long energy = state.ladder().tuple_energy(occ);
    if (energy >= lo && energy <= hi) {
      kept.emplace(occ, amp);
    }
  }
  return MultiModeState(state.ladder(), std::move(kept));
}

FockVector condition_on_harmonic(const MultiModeState& state, int mode_index,
                                 int n_q) {
  if (state.modes() != 2) {
    throw std::invalid_argument(
        "condition_on_harmonic: supported for two-mode states");
  }
  if (mode_index < 0 || mode_index > 1) {
    throw std::invalid_argument("condition_on_harmonic: mode_index out of range");
  }
  if (n_q < 0) {
    throw std::invalid_argument("condition_on_harmonic: n_q must be >= 0");
  }

  const int kept_mode = 1 - mode_index;
  int top = -1;
  for (const auto& [occ, amp] : state.terms()) {
    if (occ[static_cast<size_t>(mode_index)] == n_q) {
      top = std::max(top, occ[static_cast<size_t>(kept_mode)]);
    }
  }
  FockVector v;
  if (top < 0) {
    return v;  // zero vector: no term matches the conditioning count
  }
  v.amplitudes.assign(static_cast<size_t>(top) + 1, cplx(0.0, 0.0));
  for (const auto& [occ, amp] : state.terms()) {
    if (occ[static_cast<size_t>(mode_index)] == n_q) {
      v.amplitudes[static_cast<size_t>(occ[static_cast<size_t>(kept_mode)])] = amp;
    }
  }
  return v;
}

DiagonalMixture reduce_ir_diagonal(const MultiModeState& state,
                                   const SubspaceBasis& basis) {
  if (state.modes() != 2) {
    throw std::invalid_argument("reduce_ir_diagonal: supported for two-mode states");
  }
  const MultiModeState projected = project(state, basis);

  DiagonalMixture mix;
  mix.norm_probability = projected.squared_norm();
  if (mix.norm_probability == 0.0) {
    throw UndefinedMixtureError(
        "reduce_ir_diagonal: subspace probability is zero");
  }
  for (const auto& [occ, amp] : projected.terms()) {
    mix.probabilities[occ[0]] += std::norm(amp) / mix.norm_probability;
  }
  return mix;
}

double photon_loss(const DiagonalMixture& mixture, int total_energy,
                   int harmonic_order) {
  if (harmonic_order < 2) {
    throw std::invalid_argument("photon_loss: harmonic order must be >= 2");
  }
  // Each outcome with IR count n has absorbed q n_q = N - n photons.
  double loss = 0.0;
  for (const auto& [n_ir, p] : mixture.probabilities) {
    loss += p * static_cast<double>(total_energy - n_ir);
  }
  return loss;
}

double mean_photon_number(const DiagonalMixture& mixture) {
  double mean = 0.0;
  for (const auto& [n, p] : mixture.probabilities) {
    mean += p * static_cast<double>(n);
  }
  return mean;
}

}  // namespace ecsim
