#pragma once

#include <optional>

#include "ecsim/fockspace.hpp"

namespace ecsim {

/// Amplitudes of the two coherent branches of a cat state plus the cached
/// branch overlap xi = <beta|beta + delta_beta>.
struct CatParams {
  cplx beta;
  cplx delta_beta;
  cplx xi;

  static CatParams make(cplx beta, cplx delta_beta);
};

/// Unnormalized |beta + delta_beta> - xi |beta> in the truncated Fock basis.
/// The normalized variant has squared norm 1 - |xi|^2; orthogonal to |beta>
/// by construction. Throws DegenerateCatError when delta_beta = 0.
FockVector cat_state_vector(cplx beta, cplx delta_beta, int n_max);

/// Ratio of windowed overlap sums
///   sum_i <alpha|k_i><k_i|alpha + delta_alpha> /
///   sum_i <alpha + delta_alpha|k_i><k_i|alpha + delta_alpha>
/// with k_i = N_i - q n_q; negative k_i contribute nothing. Throws
/// ZeroSupportError when the denominator vanishes.
cplx delta_p(cplx alpha, cplx delta_alpha, const std::vector<int>& window,
             int q, int n_q);

struct FidelityReport {
  double fidelity = 0.0;
  cplx delta_p{};
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double window_probability = 0.0;  // sum_i |<k_i|alpha + delta_alpha>|^2
  cplx xi{};
};

/// Closed-form fidelity between the conditioned state of the window and the
/// matched cat built from the same (alpha, delta_alpha):
///   F = window_probability * |1 - conj(xi) dP|^2 / (1 - |xi|^2),
/// with lower/upper bounds window_probability * |1 - conj(xi) dP|^2 and
/// |1 - conj(xi) dP|^2 / (1 - |xi|^2).
FidelityReport fidelity_analytic(cplx alpha, cplx delta_alpha,
                                 const std::vector<int>& window, int q, int n_q);

/// |<cat|phi>|^2 for normalized pure states (tolerance 1e-9 on the norms).
double fidelity_bruteforce(const FockVector& cat, const FockVector& phi);

struct CatSearchOptions {
  double beta_min = -5.0;
  double beta_max = 5.0;
  double delta_beta_min = -5.0;
  double delta_beta_max = 5.0;
  int restarts_per_axis = 7;
  bool complex_amplitudes = false;  // search Im(beta), Im(delta_beta) too
  double f_tol = 1e-8;
  double x_tol = 1e-6;
  int max_iterations = 600;         // per restart
};

struct RestartResult {
  cplx start_beta;
  cplx start_delta_beta;
  double fidelity = 0.0;
  int iterations = 0;
  bool converged = false;
  bool valid = false;  // ended on a non-degenerate in-bounds point
};

struct CatOptimum {
  cplx beta;
  cplx delta_beta;
  double fidelity = 0.0;
  int restarts = 0;
  int total_iterations = 0;
  bool all_converged = false;
  std::vector<RestartResult> restart_log;
};

/// Multi-start Nelder-Mead maximization of
/// fidelity_bruteforce(normalized cat(beta, delta_beta), phi) over the
/// search box; real amplitudes by default, 4-parameter complex mode on
/// request. Deterministic. Throws OptimizationError when every restart ends
/// degenerate.
CatOptimum optimize_cat(const FockVector& phi, const CatSearchOptions& options = {});

}  // namespace ecsim
