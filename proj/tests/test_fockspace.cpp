#include <cmath>
#include <complex>

#include <doctest.h>

#include "ecsim/fockspace.hpp"

using namespace ecsim;

namespace {

// Defining formula, evaluated independently of the library recurrence.
cplx coherent_coefficient_direct(cplx alpha, int n) {
  cplx num = std::exp(-0.5 * std::norm(alpha));
  for (int j = 1; j <= n; ++j) {
    num *= alpha / std::sqrt(static_cast<double>(j));
  }
  return num;
}

}  // namespace

TEST_CASE("coherent_amplitudes: vacuum") {
  const FockVector v = coherent_amplitudes(0.0, 4);
  CHECK(v.n_max() == 4);
  CHECK(v.amplitudes[0] == cplx(1.0, 0.0));
  for (int n = 1; n <= 4; ++n) {
    CHECK(v.amplitudes[static_cast<size_t>(n)] == cplx(0.0, 0.0));
  }
}

TEST_CASE("coherent_amplitudes: alpha = 1 series") {
  const FockVector v = coherent_amplitudes(1.0, 40);
  CHECK(std::abs(v.amplitudes[0] - std::exp(-0.5)) < 1e-15);
  CHECK(std::abs(v.squared_norm() - 1.0) < 1e-12);
  for (int n : {3, 7, 20}) {
    CHECK(std::abs(v.amplitudes[static_cast<size_t>(n)] -
                   coherent_coefficient_direct(1.0, n)) < 1e-15);
  }
}

TEST_CASE("coherent_amplitudes: default cutoff captures the norm") {
  // Oracle: extend the truncation until the captured norm stops moving.
  for (double mag : {0.0, 0.7, 1.0, 2.5, 4.0, 6.0}) {
    const cplx alpha = mag * std::exp(cplx(0.0, 0.35));
    const int cutoff = default_coherent_cutoff(alpha);
    const double captured = coherent_amplitudes(alpha, cutoff).squared_norm();
    double converged = captured;
    for (int extra = cutoff + 20; extra <= cutoff + 60; extra += 20) {
      converged = coherent_amplitudes(alpha, extra).squared_norm();
    }
    CHECK(captured >= 1.0 - 1e-10);
    CHECK(std::abs(converged - 1.0) < 1e-13);
  }
}

TEST_CASE("coherent_amplitudes: shallow truncation is flaggable") {
  const FockVector shallow = coherent_amplitudes(3.0, 5);
  CHECK(shallow.squared_norm() < 1.0 - 1e-10);
  CHECK_FALSE(shallow.is_normalized(1e-10));
  CHECK(coherent_amplitudes(3.0, default_coherent_cutoff(3.0)).is_normalized(1e-10));
}

TEST_CASE("inner_product basics") {
  const FockVector x = coherent_amplitudes(cplx(1.1, -0.4), 40).normalized();
  CHECK(std::abs(inner_product(x, x) - cplx(1.0, 0.0)) < 1e-12);

  const cplx alpha(0.8, 0.3);
  const FockVector f3 = fock_basis_vector(3, 20);
  const FockVector coh = coherent_amplitudes(alpha, 20);
  const cplx expected = std::exp(-0.5 * std::norm(alpha)) * alpha * alpha * alpha /
                        std::sqrt(6.0);
  CHECK(std::abs(inner_product(f3, coh) - expected) < 1e-15);

  CHECK(inner_product(fock_basis_vector(2, 5), fock_basis_vector(3, 5)) ==
        cplx(0.0, 0.0));
}

TEST_CASE("inner_product zero-pads the shorter vector") {
  FockVector a, b;
  a.amplitudes = {cplx(1.0, 0.0), cplx(0.0, 2.0)};
  b.amplitudes = {cplx(0.5, 0.0), cplx(1.0, 0.0), cplx(3.0, 0.0)};
  CHECK(inner_product(a, b) == std::conj(a.amplitudes[0]) * b.amplitudes[0] +
                                   std::conj(a.amplitudes[1]) * b.amplitudes[1]);
}

TEST_CASE("coherent_overlap closed form") {
  const cplx alpha(1.7, -0.9);
  CHECK(coherent_overlap(alpha, alpha) == cplx(1.0, 0.0));

  const cplx gamma(0.4, 1.2);
  CHECK(std::abs(coherent_overlap(0.0, gamma) - std::exp(-0.5 * std::norm(gamma))) <
        1e-15);

  // Against the truncated expansions.
  const FockVector a = coherent_amplitudes(2.5, 60);
  const FockVector b = coherent_amplitudes(2.4, 60);
  CHECK(std::abs(coherent_overlap(2.5, 2.4) - inner_product(a, b)) < 1e-10);
}

TEST_CASE("coherent_overlap matches truncated expansions across the range") {
  for (double ma : {0.5, 2.0, 4.5, 6.0}) {
    for (double mg : {0.0, 1.5, 3.0, 6.0}) {
      const cplx alpha = ma * std::exp(cplx(0.0, 0.8));
      const cplx gamma = mg * std::exp(cplx(0.0, -2.1));
      const int cut = std::max(default_coherent_cutoff(alpha),
                               default_coherent_cutoff(gamma));
      const cplx closed = coherent_overlap(alpha, gamma);
      const cplx truncated = inner_product(coherent_amplitudes(alpha, cut),
                                           coherent_amplitudes(gamma, cut));
      CHECK(std::abs(closed - truncated) < 1e-9);
    }
  }
}

TEST_CASE("ModeLadder validation") {
  CHECK_THROWS_AS(ModeLadder({2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(ModeLadder({1, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(ModeLadder(std::vector<int>{}), std::invalid_argument);
  const ModeLadder ladder({1, 3, 5});
  CHECK(ladder.tuple_energy({2, 1, 1}) == 10);
}

TEST_CASE("product_coherent_state") {
  const ModeLadder ladder({1, 5});

  SUBCASE("all amplitudes zero") {
    const MultiModeState s = product_coherent_state({0.0, 0.0}, ladder, {4, 4});
    REQUIRE(s.terms().size() == 1);
    CHECK(s.amplitude({0, 0}) == cplx(1.0, 0.0));
  }

  SUBCASE("amplitudes factorize") {
    const MultiModeState s = product_coherent_state({2.4, 0.1}, ladder, {12, 6});
    const FockVector ir = coherent_amplitudes(2.4, 12);
    const FockVector harm = coherent_amplitudes(0.1, 6);
    for (const auto& [occ, amp] : s.terms()) {
      CHECK(amp == ir.amplitudes[static_cast<size_t>(occ[0])] *
                       harm.amplitudes[static_cast<size_t>(occ[1])]);
    }
    CHECK(std::abs(s.amplitude({3, 1}) -
                   coherent_coefficient_direct(2.4, 3) *
                       coherent_coefficient_direct(0.1, 1)) < 1e-15);
  }

  SUBCASE("fig-2 inputs capture the norm") {
    const std::vector<int> truncs{default_coherent_cutoff(cplx(2.4, 0.0)),
                                  default_coherent_cutoff(cplx(0.1, 0.0))};
    const MultiModeState s = product_coherent_state({2.4, 0.1}, ladder, truncs);
    CHECK(s.squared_norm() >= 1.0 - 1e-10);
  }

  SUBCASE("mismatched lengths throw") {
    CHECK_THROWS_AS(product_coherent_state({2.4}, ladder, {4, 4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(product_coherent_state({2.4, 0.1}, ladder, {4}),
                    std::invalid_argument);
  }
}

TEST_CASE("MultiModeState prunes below threshold") {
  const ModeLadder ladder({1, 2});
  MultiModeState::TermMap terms;
  terms[{0, 0}] = cplx(0.5, 0.0);
  terms[{1, 0}] = cplx(1e-16, 0.0);  // below 1e-15
  const MultiModeState s(ladder, std::move(terms));
  CHECK(s.terms().size() == 1);
  CHECK(s.amplitude({1, 0}) == cplx(0.0, 0.0));

  MultiModeState::TermMap bad;
  bad[{0, 0, 0}] = cplx(1.0, 0.0);  // three entries for a two-mode ladder
  CHECK_THROWS_AS(MultiModeState(ladder, std::move(bad)), std::invalid_argument);
}
