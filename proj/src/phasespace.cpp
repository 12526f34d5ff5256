#include "ecsim/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ecsim/errors.hpp"

namespace ecsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_M.
void gauss_legendre(int points, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(static_cast<size_t>(points), 0.0);
  weights.assign(static_cast<size_t>(points), 0.0);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (points + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = points * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[static_cast<size_t>(i)] = -z;
    nodes[static_cast<size_t>(points - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(points - 1 - i)] = w;
  }
}

}  // namespace

double WignerGrid::quadrature() const {
  if (re_axis.size() < 2 || im_axis.size() < 2) {
    throw std::invalid_argument("WignerGrid::quadrature: need >= 2 points per axis");
  }
  const double cell = (re_axis[1] - re_axis[0]) * (im_axis[1] - im_axis[0]);
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell;
}

double WignerGrid::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) {
    throw std::invalid_argument("linspace: need at least one point");
  }
  std::vector<double> out(static_cast<size_t>(points));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    out[static_cast<size_t>(i)] = lo + step * i;
  }
  out.back() = hi;
  return out;
}

double laguerre(int n, double x) { return generalized_laguerre(n, 0, x); }

double generalized_laguerre(int n, int k, double x) {
  if (n < 0 || k < 0) {
    throw std::invalid_argument("generalized_laguerre: need n, k >= 0");
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int j = 2; j <= n; ++j) {
    const double next = ((2.0 * (j - 1) + 1.0 + k - x) * cur - (j - 1.0 + k) * prev) / j;
    prev = cur;
    cur = next;
  }
  return cur;
}

double wigner_fock_diag(int n, cplx beta) {
  if (n < 0) {
    throw std::invalid_argument("wigner_fock_diag: n must be >= 0");
  }
  const double bb = std::norm(beta);
  return parity_sign(n) * (1.0 / kPi) * std::exp(-bb) * laguerre(n, 2.0 * bb);
}

cplx wigner_fock_offdiag(int n, int m, cplx beta) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("wigner_fock_offdiag: need n, m >= 0");
  }
  if (m < n) {
    return std::conj(wigner_fock_offdiag(m, n, beta));
  }
  const double bb = std::norm(beta);
  // (sqrt2 conj(beta))^{m-n} sqrt(n!/m!) as a running product keeps every
  // intermediate bounded.
  cplx pref = 1.0;
  for (int j = n + 1; j <= m; ++j) {
    pref *= kSqrt2 * std::conj(beta) / std::sqrt(static_cast<double>(j));
  }
  return parity_sign(n) * (1.0 / kPi) * pref * std::exp(-bb) *
         generalized_laguerre(n, m - n, 2.0 * bb);
}

WignerGrid wigner_of_fock_vector(const FockVector& v,
                                 const std::vector<double>& re_axis,
                                 const std::vector<double>& im_axis) {
  if (!v.is_normalized(1e-9)) {
    throw NotNormalizedError("wigner_of_fock_vector: input not normalized");
  }
  const int d = static_cast<int>(v.amplitudes.size());

  WignerGrid grid;
  grid.re_axis = re_axis;
  grid.im_axis = im_axis;
  grid.values.assign(re_axis.size() * im_axis.size(), 0.0);

  for (size_t iy = 0; iy < im_axis.size(); ++iy) {
    for (size_t ix = 0; ix < re_axis.size(); ++ix) {
      const cplx beta(re_axis[ix], im_axis[iy]);
      const double bb = std::norm(beta);
      const double x = 2.0 * bb;
      const double gauss = std::exp(-bb);
      double w = 0.0;

      // Offsets k = m - n of rho_{nm} = v_n conj(v_m); the k > 0 pair and its
      // mirror contribute 2 Re(rho_{n,n+k} kernel_{n,n+k}).
      cplx t = gauss;  // e^{-|b|^2} (sqrt2 conj b)^k / sqrt(k!)
      for (int k = 0; k < d; ++k) {
        if (k > 0) t *= kSqrt2 * std::conj(beta) / std::sqrt(static_cast<double>(k));
        double u = 1.0;  // sqrt(k! n! / (n+k)!)
        double lag_prev = 1.0;
        double lag_cur = 1.0 + k - x;
        for (int n = 0; n + k < d; ++n) {
          double lag;
          if (n == 0) {
            lag = 1.0;
          } else if (n == 1) {
            lag = lag_cur;
          } else {
            const double next =
                ((2.0 * (n - 1) + 1.0 + k - x) * lag_cur - (n - 1.0 + k) * lag_prev) / n;
            lag_prev = lag_cur;
            lag_cur = next;
            lag = lag_cur;
          }
          if (n > 0) u *= std::sqrt(static_cast<double>(n) / (n + k));

          const cplx rho_nm = v.amplitudes[static_cast<size_t>(n)] *
                              std::conj(v.amplitudes[static_cast<size_t>(n + k)]);
          const cplx kernel = parity_sign(n) * (1.0 / kPi) * u * t * lag;
          if (k == 0) {
            w += std::real(rho_nm) * std::real(kernel);
          } else {
            w += 2.0 * std::real(rho_nm * kernel);
          }
        }
      }
      grid.values[iy * re_axis.size() + ix] = w;
    }
  }
  return grid;
}

WignerGrid wigner_of_diagonal_mixture(const DiagonalMixture& mixture,
                                      const std::vector<double>& re_axis,
                                      const std::vector<double>& im_axis) {
  WignerGrid grid;
  grid.re_axis = re_axis;
  grid.im_axis = im_axis;
  grid.values.assign(re_axis.size() * im_axis.size(), 0.0);
  for (size_t iy = 0; iy < im_axis.size(); ++iy) {
    for (size_t ix = 0; ix < re_axis.size(); ++ix) {
      const cplx beta(re_axis[ix], im_axis[iy]);
      double w = 0.0;
      for (const auto& [n, p] : mixture.probabilities) {
        w += p * wigner_fock_diag(n, beta);
      }
      grid.values[iy * re_axis.size() + ix] = w;
    }
  }
  return grid;
}

WignerOracle::WignerOracle(const Eigen::MatrixXcd& rho) {
  const int n_top = static_cast<int>(rho.rows()) - 1;
  extent_ = std::max(8.5, std::sqrt(4.0 * n_top + 2.0) + 5.0);
  const double freq = 2.0 * std::sqrt(static_cast<double>(std::max(n_top, 1))) + 9.2;
  const int m = std::min(1200, static_cast<int>(std::ceil(0.68 * extent_ * freq)) + 60);
  gauss_legendre(m, nodes_x_, weights_);
  for (double& v : nodes_x_) v *= extent_;
  for (double& v : weights_) v *= extent_;
  build(rho);
}

WignerOracle::WignerOracle(const Eigen::MatrixXcd& rho, double lambda_extent,
                           int nodes) {
  extent_ = lambda_extent;
  gauss_legendre(nodes, nodes_x_, weights_);
  for (double& v : nodes_x_) v *= extent_;
  for (double& v : weights_) v *= extent_;
  build(rho);
}

void WignerOracle::build(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw std::invalid_argument("WignerOracle: density matrix must be square");
  }
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw std::invalid_argument("WignerOracle: input not Hermitian");
  }
  const int d = static_cast<int>(rho.rows());
  const size_t grid = nodes_x_.size();

  // Per-offset occupancy so diagonal or sparse densities skip whole chains.
  std::vector<bool> offset_used(static_cast<size_t>(d), false);
  for (int n = 0; n < d; ++n) {
    for (int m = n; m < d; ++m) {
      if (rho(n, m) != cplx(0.0, 0.0) || rho(m, n) != cplx(0.0, 0.0)) {
        offset_used[static_cast<size_t>(m - n)] = true;
      }
    }
  }

  weighted_chi_.assign(grid * grid, cplx(0.0, 0.0));
  for (size_t ix = 0; ix < grid; ++ix) {
    for (size_t iy = 0; iy < grid; ++iy) {
      const cplx lam(nodes_x_[ix], nodes_x_[iy]);
      const double s = std::norm(lam);
      const double gauss = std::exp(-0.5 * s);

      // chi = Tr[rho D] = sum_{n,m} rho_{nm} D_{mn} with the closed-form
      // elements D_{n+k,n} = t_k u_{nk} L_n^{(k)}(s),
      // D_{n,n+k} = tbar_k u_{nk} L_n^{(k)}(s).
      cplx chi = 0.0;
      cplx t = gauss;       // e^{-s/2} lam^k / sqrt(k!)
      cplx tbar = gauss;    // e^{-s/2} (-conj lam)^k / sqrt(k!)
      for (int k = 0; k < d; ++k) {
        if (k > 0) {
          const double inv = 1.0 / std::sqrt(static_cast<double>(k));
          t *= lam * inv;
          tbar *= -std::conj(lam) * inv;
        }
        if (!offset_used[static_cast<size_t>(k)]) continue;
        double u = 1.0;
        double lag_prev = 1.0;
        double lag_cur = 1.0 + k - s;
        for (int n = 0; n + k < d; ++n) {
          double lag;
          if (n == 0) {
            lag = 1.0;
          } else if (n == 1) {
            lag = lag_cur;
          } else {
            const double next =
                ((2.0 * (n - 1) + 1.0 + k - s) * lag_cur - (n - 1.0 + k) * lag_prev) / n;
            lag_prev = lag_cur;
            lag_cur = next;
            lag = lag_cur;
          }
          if (n > 0) u *= std::sqrt(static_cast<double>(n) / (n + k));

          if (k == 0) {
            chi += rho(n, n) * (u * lag) * t;
          } else {
            chi += rho(n, n + k) * (u * lag) * t;     // pairs with D_{n+k,n}
            chi += rho(n + k, n) * (u * lag) * tbar;  // pairs with D_{n,n+k}
          }
        }
      }
      weighted_chi_[ix * grid + iy] = chi * (weights_[ix] * weights_[iy]);
    }
  }
}

double WignerOracle::evaluate(cplx beta) const {
  const size_t grid = nodes_x_.size();
  const double a = beta.real();
  const double b = beta.imag();
  std::vector<cplx> phase_x(grid), phase_y(grid);
  for (size_t i = 0; i < grid; ++i) {
    phase_x[i] = std::exp(cplx(0.0, kSqrt2 * b * nodes_x_[i]));
    phase_y[i] = std::exp(cplx(0.0, -kSqrt2 * a * nodes_x_[i]));
  }
  cplx total = 0.0;
  for (size_t ix = 0; ix < grid; ++ix) {
    cplx row = 0.0;
    const cplx* chi_row = &weighted_chi_[ix * grid];
    for (size_t iy = 0; iy < grid; ++iy) {
      row += chi_row[iy] * phase_y[iy];
    }
    total += row * phase_x[ix];
  }
  return std::real(total) / (2.0 * kPi * kPi);
}

WignerGrid WignerOracle::evaluate_grid(const std::vector<double>& re_axis,
                                       const std::vector<double>& im_axis) const {
  const size_t grid = nodes_x_.size();
  WignerGrid out;
  out.re_axis = re_axis;
  out.im_axis = im_axis;
  out.values.assign(re_axis.size() * im_axis.size(), 0.0);

  // The kernel factorizes as e^{i sqrt2 b x} e^{-i sqrt2 a y}; contract the
  // x nodes once per im value, then sweep the re axis.
  std::vector<cplx> col(grid);
  for (size_t iy_out = 0; iy_out < im_axis.size(); ++iy_out) {
    const double b = im_axis[iy_out];
    for (size_t iy = 0; iy < grid; ++iy) col[iy] = cplx(0.0, 0.0);
    for (size_t ix = 0; ix < grid; ++ix) {
      const cplx px = std::exp(cplx(0.0, kSqrt2 * b * nodes_x_[ix]));
      const cplx* chi_row = &weighted_chi_[ix * grid];
      for (size_t iy = 0; iy < grid; ++iy) {
        col[iy] += chi_row[iy] * px;
      }
    }
    for (size_t ix_out = 0; ix_out < re_axis.size(); ++ix_out) {
      const double a = re_axis[ix_out];
      cplx total = 0.0;
      for (size_t iy = 0; iy < grid; ++iy) {
        total += col[iy] * std::exp(cplx(0.0, -kSqrt2 * a * nodes_x_[iy]));
      }
      out.values[iy_out * re_axis.size() + ix_out] =
          std::real(total) / (2.0 * kPi * kPi);
    }
  }
  return out;
}

double wigner_oracle(const Eigen::MatrixXcd& rho, cplx beta) {
  return WignerOracle(rho).evaluate(beta);
}

}  // namespace ecsim
