#pragma once

#include <Eigen/Dense>

#include "ecsim/fockspace.hpp"
#include "ecsim/subspace.hpp"

namespace ecsim {

/// Real Wigner values W(beta) sampled on a rectangular grid,
/// beta = re_axis[j] + i im_axis[i], stored row-major by im index.
struct WignerGrid {
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  std::vector<double> values;

  double at(int i_im, int j_re) const {
    return values[static_cast<size_t>(i_im) * re_axis.size() +
                  static_cast<size_t>(j_re)];
  }
  double& at(int i_im, int j_re) {
    return values[static_cast<size_t>(i_im) * re_axis.size() +
                  static_cast<size_t>(j_re)];
  }

  /// Riemann sum of W over the grid cell areas; ~1 for normalized states
  /// on a domain that contains the support.
  double quadrature() const;
  double min_value() const;
};

std::vector<double> linspace(double lo, double hi, int points);

/// L_n(x) by the three-term upward recurrence.
double laguerre(int n, double x);

/// Generalized L_n^{(k)}(x), same recurrence.
double generalized_laguerre(int n, int k, double x);

/// W_{|n><n|}(beta) = (-1)^n/pi e^{-|beta|^2} L_n(2|beta|^2).
double wigner_fock_diag(int n, cplx beta);

/// Wigner kernel of |n><m|; for m >= n,
/// (-1)^n/pi sqrt(n!/m!) (sqrt2 conj(beta))^{m-n} e^{-|beta|^2} L_n^{(m-n)}(2|beta|^2),
/// and the m < n case by Hermitian symmetry. Reduces to the diagonal kernel
/// at n = m.
cplx wigner_fock_offdiag(int n, int m, cplx beta);

/// W(beta) = sum_{n,m} v_n conj(v_m) W_{|n><m|}(beta) of a normalized pure
/// state; throws NotNormalizedError beyond tolerance 1e-9.
WignerGrid wigner_of_fock_vector(const FockVector& v,
                                 const std::vector<double>& re_axis,
                                 const std::vector<double>& im_axis);

/// Probability-weighted sum of the diagonal Fock kernels.
WignerGrid wigner_of_diagonal_mixture(const DiagonalMixture& mixture,
                                      const std::vector<double>& re_axis,
                                      const std::vector<double>& im_axis);

/// Independent cross-check: evaluates W as the Fourier transform of the
/// characteristic function chi(lambda) = Tr[rho D(lambda)] by tensor
/// Gauss-Legendre quadrature over the lambda plane, with the coordinate
/// scaling fixed so the vacuum reproduces (1/pi) e^{-|beta|^2}. The
/// displacement matrix elements come from their closed form, a route
/// disjoint from the direct beta-space kernels above.
class WignerOracle {
 public:
  /// Quadrature parameters chosen from the matrix size, good to ~1e-10
  /// absolute for |beta| <= 6.5. Throws on non-Hermitian input
  /// (asymmetry > 1e-12).
  explicit WignerOracle(const Eigen::MatrixXcd& rho);
  WignerOracle(const Eigen::MatrixXcd& rho, double lambda_extent, int nodes);

  double evaluate(cplx beta) const;
  WignerGrid evaluate_grid(const std::vector<double>& re_axis,
                           const std::vector<double>& im_axis) const;

  double lambda_extent() const { return extent_; }
  int nodes() const { return static_cast<int>(nodes_x_.size()); }

 private:
  void build(const Eigen::MatrixXcd& rho);

  double extent_ = 0.0;
  std::vector<double> nodes_x_;
  std::vector<double> weights_;
  // chi(lambda) premultiplied by the quadrature weights, row-major in
  // (x index, y index).
  std::vector<cplx> weighted_chi_;
};

/// One-shot oracle evaluation with automatic parameters.
double wigner_oracle(const Eigen::MatrixXcd& rho, cplx beta);

}  // namespace ecsim
