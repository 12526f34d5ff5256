#include "ecsim/fockspace.hpp"

#include <cmath>
#include <stdexcept>

#include "ecsim/errors.hpp"

namespace ecsim {

ModeLadder::ModeLadder(std::vector<int> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) {
    throw std::invalid_argument("ModeLadder: at least one mode required");
  }
  if (energies_.front() != 1) {
    throw std::invalid_argument("ModeLadder: mode 0 must have energy 1");
  }
  for (size_t m = 1; m < energies_.size(); ++m) {
    if (energies_[m] <= energies_[m - 1]) {
      throw std::invalid_argument("ModeLadder: energies must be strictly increasing");
    }
  }
}

long long ModeLadder::tuple_energy(const Occupation& occ) const {
  if (occ.size() != energies_.size()) {
    throw std::invalid_argument("tuple_energy: occupation length does not match ladder");
  }
  long long total = 0;
  for (size_t m = 0; m < occ.size(); ++m) {
    total += static_cast<long long>(energies_[m]) * occ[m];
  }
  return total;
}

double FockVector::squared_norm() const {
  double s = 0.0;
  for (const cplx& c : amplitudes) s += std::norm(c);
  return s;
}

bool FockVector::is_zero() const {
  for (const cplx& c : amplitudes) {
    if (c != cplx(0.0, 0.0)) return false;
  }
  return true;
}

bool FockVector::is_normalized(double eps) const {
  return std::abs(squared_norm() - 1.0) <= eps;
}

FockVector FockVector::normalized() const {
  const double n2 = squared_norm();
  if (n2 == 0.0) {
    throw std::domain_error("FockVector::normalized: zero vector");
  }
  FockVector out = *this;
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& c : out.amplitudes) c *= inv;
  return out;
}

cplx inner_product(const FockVector& a, const FockVector& b) {
  const size_t n = std::min(a.amplitudes.size(), b.amplitudes.size());
  cplx s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return s;
}

int default_coherent_cutoff(double amplitude_magnitude) {
  const double mu = amplitude_magnitude * amplitude_magnitude;
  const int n = static_cast<int>(std::ceil(mu + 8.0 * std::sqrt(mu + 1.0)));
  return std::max(16, n);
}

int default_coherent_cutoff(cplx alpha) {
  return default_coherent_cutoff(std::abs(alpha));
}

FockVector coherent_amplitudes(cplx alpha, int n_max) {
  if (n_max < 0) {
    throw std::invalid_argument("coherent_amplitudes: n_max must be >= 0");
  }
  FockVector v;
  v.amplitudes.resize(static_cast<size_t>(n_max) + 1);
  v.amplitudes[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) {
    v.amplitudes[static_cast<size_t>(n)] =
        v.amplitudes[static_cast<size_t>(n) - 1] * alpha / std::sqrt(static_cast<double>(n));
  }
  return v;
}

FockVector fock_basis_vector(int n, int n_max) {
  if (n < 0 || n > n_max) {
    throw std::invalid_argument("fock_basis_vector: need 0 <= n <= n_max");
  }
  FockVector v;
  v.amplitudes.assign(static_cast<size_t>(n_max) + 1, cplx(0.0, 0.0));
  v.amplitudes[static_cast<size_t>(n)] = 1.0;
  return v;
}

cplx coherent_overlap(cplx alpha, cplx gamma) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(gamma) +
                  std::conj(alpha) * gamma);
}

MultiModeState::MultiModeState(ModeLadder ladder, TermMap terms)
    : ladder_(std::move(ladder)) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (static_cast<int>(it->first.size()) != ladder_.modes()) {
      throw std::invalid_argument("MultiModeState: tuple length does not match ladder");
    }
    if (std::abs(it->second) < kPruneThreshold) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  terms_ = std::move(terms);
}

cplx MultiModeState::amplitude(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
}

double MultiModeState::squared_norm() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms_) s += std::norm(amp);
  return s;
}

MultiModeState product_coherent_state(const std::vector<cplx>& amplitudes,
                                      const ModeLadder& ladder,
                                      const std::vector<int>& truncations) {
  const size_t modes = static_cast<size_t>(ladder.modes());
  if (amplitudes.size() != modes || truncations.size() != modes) {
    throw std::invalid_argument(
        "product_coherent_state: one amplitude and one truncation per mode");
  }

  std::vector<FockVector> factors;
  factors.reserve(modes);
  for (size_t m = 0; m < modes; ++m) {
    factors.push_back(coherent_amplitudes(amplitudes[m], truncations[m]));
  }

  MultiModeState::TermMap terms;
  Occupation occ(modes, 0);
  // Depth-first product over per-mode coefficients, pruning whole subtrees
  // once the partial product falls below threshold (coefficients of later
  // modes are bounded by 1, so the product can only shrink).
  auto expand = [&](auto&& self, size_t mode, cplx partial) -> void {
    if (std::abs(partial) < kPruneThreshold) return;
    if (mode == modes) {
      terms.emplace(occ, partial);
      return;
    }
    const auto& coeffs = factors[mode].amplitudes;
    for (int n = 0; n <= truncations[mode]; ++n) {
      occ[mode] = n;
      self(self, mode + 1, partial * coeffs[static_cast<size_t>(n)]);
    }
    occ[mode] = 0;
  };
  expand(expand, 0, cplx(1.0, 0.0));

  return MultiModeState(ladder, std::move(terms));
}

}  // namespace ecsim
