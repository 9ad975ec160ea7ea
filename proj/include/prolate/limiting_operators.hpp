#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prolate/error.hpp"
#include "prolate/line_grid.hpp"
#include "prolate/sinc_kernel.hpp"

namespace prolate {

/// 0/1 mask of the time-limiting projection: 1 where |x| < tau. Points exactly
/// at +-tau get 0.
inline std::vector<double> build_time_limiter(const LineGrid& grid, double tau) {
  if (!(tau > 0.0)) throw invalid_argument("build_time_limiter: tau must be positive");
  if (tau >= grid.half_width)
    throw invalid_argument("build_time_limiter: tau = " + std::to_string(tau) +
                           " must be below the grid half width " + std::to_string(grid.half_width));
  std::vector<double> mask(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) mask[i] = std::abs(grid.points[i]) < tau ? 1.0 : 0.0;
  return mask;
}

/// Band-limiting projection through its sinc kernel, in weighted coordinates:
/// S[i][j] = sqrt(w_i) k(x_i, x_j) sqrt(w_j). Requires max spacing * omega < 1.
inline Eigen::MatrixXd build_band_limiter(const LineGrid& grid, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw invalid_argument("build_band_limiter: omega must be positive and finite");
  const double h_omega = grid.max_spacing() * omega;
  if (!(h_omega < 1.0))
    throw invalid_argument("build_band_limiter: grid too coarse for omega, h*omega = " +
                           std::to_string(h_omega));

  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd sqrt_w(n);
  for (Eigen::Index i = 0; i < n; ++i) sqrt_w(i) = std::sqrt(grid.weights[i]);

  Eigen::MatrixXd s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double v = sqrt_w(i) * sinc_kernel(omega, grid.points[i], grid.points[j]) * sqrt_w(j);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

/// chi_(-tau,tau), S_omega and T = chi + S on one grid, all in weighted
/// coordinates. Immutable after construction.
struct LimitingOperators {
  GridPtr grid;
  double tau = 0.0;
  double omega = 0.0;
  std::vector<double> chi;
  Eigen::MatrixXd S;
  Eigen::MatrixXd T;

  GridFunction apply_chi(const GridFunction& f) const {
    check_grid(f);
    std::vector<GridFunction::value_type> v(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= chi[i];
    return GridFunction(grid, std::move(v));
  }

  GridFunction apply_S(const GridFunction& f) const {
    check_grid(f);
    return GridFunction::from_weighted(grid, S.cast<std::complex<double>>() * f.weighted());
  }

  GridFunction apply_T(const GridFunction& f) const {
    check_grid(f);
    return GridFunction::from_weighted(grid, T.cast<std::complex<double>>() * f.weighted());
  }

  void check_grid(const GridFunction& f) const {
    if (f.grid_ptr() != grid) throw invalid_argument("LimitingOperators: grid mismatch");
  }
};

inline LimitingOperators make_limiting_operators(GridPtr grid, double tau, double omega) {
  if (!grid) throw invalid_argument("make_limiting_operators: null grid");
  LimitingOperators ops;
  ops.grid = grid;
  ops.tau = tau;
  ops.omega = omega;
  ops.chi = build_time_limiter(*grid, tau);
  ops.S = build_band_limiter(*grid, omega);
  ops.T = ops.S;
  for (std::size_t i = 0; i < ops.chi.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    ops.T(k, k) += ops.chi[i];
  }
  return ops;
}

struct ProjectorDefects {
  double idempotence = 0.0;  ///< ||P^2 - P||_2
  double symmetry = 0.0;     ///< ||P - P^T||_2
};

namespace detail {

inline double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.isApprox(m.transpose(), 0.0)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace detail

/// Defects of a matrix already expressed in orthonormal (weighted) coordinates.
inline ProjectorDefects projector_check(const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols())
    throw invalid_argument("projector_check: matrix is " + std::to_string(p.rows()) + "x" +
                           std::to_string(p.cols()) + ", not square");
  ProjectorDefects d;
  const Eigen::MatrixXd asym = p - p.transpose();
  d.symmetry = asym.isZero(0.0) ? 0.0 : detail::spectral_norm(asym);
  const Eigen::MatrixXd idem = p * p - p;
  d.idempotence = idem.isZero(0.0) ? 0.0 : detail::spectral_norm(idem);
  return d;
}

/// Defects of a matrix acting on nodal values, measured in the weighted inner
/// product with the given quadrature weights: W^1/2 P W^-1/2 is checked.
inline ProjectorDefects projector_check(const Eigen::MatrixXd& p, std::span<const double> weights) {
  if (p.rows() != p.cols()) return projector_check(p);
  if (static_cast<std::size_t>(p.rows()) != weights.size())
    throw invalid_argument("projector_check: weight count does not match matrix order");
  Eigen::MatrixXd q = p;
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    for (Eigen::Index j = 0; j < q.cols(); ++j)
      q(i, j) *= std::sqrt(weights[static_cast<std::size_t>(i)] / weights[static_cast<std::size_t>(j)]);
  return projector_check(q);
}

/// Defects of a diagonal mask.
inline ProjectorDefects projector_check(std::span<const double> mask) {
  ProjectorDefects d;
  for (double m : mask) d.idempotence = std::max(d.idempotence, std::abs(m * m - m));
  return d;
}

}  // namespace prolate
