#include "ecsim/catfidelity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "ecsim/errors.hpp"

namespace ecsim {

CatParams CatParams::make(cplx beta, cplx delta_beta) {
  return CatParams{beta, delta_beta, coherent_overlap(beta, beta + delta_beta)};
}

FockVector cat_state_vector(cplx beta, cplx delta_beta, int n_max) {
  if (delta_beta == cplx(0.0, 0.0)) {
    throw DegenerateCatError("cat_state_vector: delta_beta = 0 gives the zero vector");
  }
  const cplx xi = coherent_overlap(beta, beta + delta_beta);
  const FockVector shifted = coherent_amplitudes(beta + delta_beta, n_max);
  const FockVector base = coherent_amplitudes(beta, n_max);
  FockVector cat;
  cat.amplitudes.resize(shifted.amplitudes.size());
  for (size_t n = 0; n < cat.amplitudes.size(); ++n) {
    cat.amplitudes[n] = shifted.amplitudes[n] - xi * base.amplitudes[n];
  }
  return cat;
}

namespace {

// Fock numbers k_i = N_i - q n_q reachable from the window.
std::vector<int> window_fock_numbers(const std::vector<int>& window, int q, int n_q) {
  if (window.empty()) {
    throw std::invalid_argument("window must be nonempty");
  }
  if (q < 2 || n_q < 0) {
    throw std::invalid_argument("need harmonic order q >= 2 and n_q >= 0");
  }
  std::vector<int> ks;
  for (int energy : window) {
    const int k = energy - q * n_q;
    if (k >= 0) ks.push_back(k);
  }
  return ks;
}

}  // namespace

cplx delta_p(cplx alpha, cplx delta_alpha, const std::vector<int>& window,
             int q, int n_q) {
  const std::vector<int> ks = window_fock_numbers(window, q, n_q);
  if (ks.empty()) {
    throw ZeroSupportError("delta_p: window has no nonnegative Fock numbers");
  }
  const int top = *std::max_element(ks.begin(), ks.end());
  const FockVector ca = coherent_amplitudes(alpha, top);
  const FockVector cs = coherent_amplitudes(alpha + delta_alpha, top);

  cplx num = 0.0;
  double den = 0.0;
  for (int k : ks) {
    const cplx s = cs.amplitudes[static_cast<size_t>(k)];
    num += std::conj(ca.amplitudes[static_cast<size_t>(k)]) * s;
    den += std::norm(s);
  }
  if (den == 0.0) {
    throw ZeroSupportError("delta_p: window carries no probability");
  }
  return num / den;
}

FidelityReport fidelity_analytic(cplx alpha, cplx delta_alpha,
                                 const std::vector<int>& window, int q, int n_q) {
  if (delta_alpha == cplx(0.0, 0.0)) {
    throw DegenerateCatError("fidelity_analytic: delta_alpha = 0 gives a degenerate cat");
  }
  const cplx xi = coherent_overlap(alpha, alpha + delta_alpha);
  const double xi2_gap = 1.0 - std::norm(xi);
  if (xi2_gap <= 0.0) {
    throw DegenerateCatError("fidelity_analytic: |xi| = 1, cat not normalizable");
  }

  const std::vector<int> ks = window_fock_numbers(window, q, n_q);
  if (ks.empty()) {
    throw ZeroSupportError("fidelity_analytic: window has no nonnegative Fock numbers");
  }
  const int top = *std::max_element(ks.begin(), ks.end());
  const FockVector cs = coherent_amplitudes(alpha + delta_alpha, top);
  double window_probability = 0.0;
  for (int k : ks) {
    window_probability += std::norm(cs.amplitudes[static_cast<size_t>(k)]);
  }

  const cplx dp = delta_p(alpha, delta_alpha, window, q, n_q);
  const double factor = std::norm(1.0 - std::conj(xi) * dp);

  FidelityReport report;
  report.delta_p = dp;
  report.xi = xi;
  report.window_probability = window_probability;
  report.lower_bound = factor * window_probability;
  report.upper_bound = factor / xi2_gap;
  report.fidelity = factor * window_probability / xi2_gap;
  return report;
}

double fidelity_bruteforce(const FockVector& cat, const FockVector& phi) {
  if (!cat.is_normalized(1e-9) || !phi.is_normalized(1e-9)) {
    throw NotNormalizedError("fidelity_bruteforce: inputs must be normalized");
  }
  return std::norm(inner_product(cat, phi));
}

namespace {

struct Objective {
  const FockVector& phi;
  const CatSearchOptions& opt;

  // Returns the fidelity at the point, or nothing when the point is out of
  // bounds or the cat is degenerate there.
  std::optional<double> operator()(const std::vector<double>& x) const {
    const bool cx = opt.complex_amplitudes;
    const cplx beta = cx ? cplx(x[0], x[2]) : cplx(x[0], 0.0);
    const cplx dbeta = cx ? cplx(x[1], x[3]) : cplx(x[1], 0.0);
    if (x[0] < opt.beta_min || x[0] > opt.beta_max) return std::nullopt;
    if (x[1] < opt.delta_beta_min || x[1] > opt.delta_beta_max) return std::nullopt;
    if (cx && (std::abs(x[2]) > opt.beta_max - opt.beta_min ||
               std::abs(x[3]) > opt.delta_beta_max - opt.delta_beta_min)) {
      return std::nullopt;
    }
    if (dbeta == cplx(0.0, 0.0)) return std::nullopt;

    const int n_max = default_coherent_cutoff(std::abs(beta) + std::abs(dbeta));
    FockVector cat = cat_state_vector(beta, dbeta, n_max);
    const double n2 = cat.squared_norm();
    if (!(n2 > 1e-250)) return std::nullopt;
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& c : cat.amplitudes) c *= inv;
    return std::norm(inner_product(cat, phi));
  }
};

struct SimplexOutcome {
  std::vector<double> best_x;
  double best_f = 0.0;     // fidelity (maximized)
  int iterations = 0;
  bool converged = false;
  bool valid = false;
};

// Standard Nelder-Mead on the negated fidelity. Invalid points act as a
// large penalty so the simplex retreats into the feasible region.
SimplexOutcome nelder_mead(const Objective& objective,
                           const std::vector<double>& start,
                           const CatSearchOptions& opt) {
  const size_t dim = start.size();
  constexpr double kPenalty = 1e6;

  auto eval = [&](const std::vector<double>& x) {
    const std::optional<double> f = objective(x);
    return f ? -*f : kPenalty;
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += 0.4;
  }
  std::vector<double> fvals(dim + 1);
  for (size_t i = 0; i <= dim; ++i) fvals[i] = eval(simplex[i]);

  SimplexOutcome out;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    std::vector<size_t> order(dim + 1);
    for (size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return fvals[a] < fvals[b]; });
    const size_t best = order[0], worst = order[dim], second = order[dim - 1];

    double diameter = 0.0;
    for (size_t i = 1; i <= dim; ++i) {
      for (size_t j = 0; j < dim; ++j) {
        diameter = std::max(diameter,
                            std::abs(simplex[order[i]][j] - simplex[best][j]));
      }
    }
    if (std::abs(fvals[worst] - fvals[best]) < opt.f_tol && diameter < opt.x_tol) {
      out.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> x(dim);
      for (size_t j = 0; j < dim; ++j) {
        x[j] = centroid[j] + coeff * (simplex[worst][j] - centroid[j]);
      }
      return x;
    };

    const std::vector<double> reflected = blend(-1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected < fvals[best]) {
      const std::vector<double> expanded = blend(-2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        fvals[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        fvals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fvals[second]) {
      simplex[worst] = reflected;
      fvals[worst] = f_reflected;
      continue;
    }
    const std::vector<double> contracted =
        blend(f_reflected < fvals[worst] ? -0.5 : 0.5);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(fvals[worst], f_reflected)) {
      simplex[worst] = contracted;
      fvals[worst] = f_contracted;
      continue;
    }
    for (size_t i = 0; i <= dim; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      for (size_t j = 0; j < dim; ++j) {
        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      }
      fvals[i] = eval(simplex[i]);
    }
  }
  out.iterations = iter;

  size_t best = 0;
  for (size_t i = 1; i <= dim; ++i) {
    if (fvals[i] < fvals[best]) best = i;
  }
  out.best_x = simplex[best];
  if (fvals[best] < kPenalty) {
    out.valid = true;
    out.best_f = -fvals[best];
  }
  return out;
}

std::vector<double> linspace_starts(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

}  // namespace

CatOptimum optimize_cat(const FockVector& phi, const CatSearchOptions& options) {
  if (!phi.is_normalized(1e-9)) {
    throw NotNormalizedError("optimize_cat: phi must be normalized");
  }
  if (options.restarts_per_axis < 1) {
    throw std::invalid_argument("optimize_cat: need at least one restart");
  }

  const Objective objective{phi, options};
  const size_t dim = options.complex_amplitudes ? 4 : 2;

  const std::vector<double> beta_starts =
      linspace_starts(options.beta_min, options.beta_max, options.restarts_per_axis);
  const std::vector<double> dbeta_starts = linspace_starts(
      options.delta_beta_min, options.delta_beta_max, options.restarts_per_axis);

  CatOptimum best;
  best.fidelity = -1.0;
  best.all_converged = true;

  for (double b0 : beta_starts) {
    for (double d0 : dbeta_starts) {
      std::vector<double> start(dim, 0.0);
      start[0] = b0;
      start[1] = d0;
      const SimplexOutcome run = nelder_mead(objective, start, options);

      RestartResult log;
      log.start_beta = cplx(b0, 0.0);
      log.start_delta_beta = cplx(d0, 0.0);
      log.iterations = run.iterations;
      log.converged = run.converged;
      log.valid = run.valid;
      log.fidelity = run.valid ? run.best_f : 0.0;
      best.restart_log.push_back(log);
      best.total_iterations += run.iterations;
      best.restarts += 1;
      if (!run.converged) best.all_converged = false;

      if (run.valid && run.best_f > best.fidelity) {
        best.fidelity = run.best_f;
        best.beta = options.complex_amplitudes ? cplx(run.best_x[0], run.best_x[2])
                                               : cplx(run.best_x[0], 0.0);
        best.delta_beta = options.complex_amplitudes
                              ? cplx(run.best_x[1], run.best_x[3])
                              : cplx(run.best_x[1], 0.0);
      }
    }
  }

  if (best.fidelity < 0.0) {
    throw OptimizationError("optimize_cat: every restart ended degenerate");
  }
  return best;
}

}  // namespace ecsim
