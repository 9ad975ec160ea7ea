#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "prolate/error.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/sinc_kernel.hpp"

namespace prolate {

/// Eigenvalues below this are indistinguishable from round-off.
inline constexpr double kNoiseFloor = 1e-12;
/// Adjacent eigenvalues closer than this are treated as a numerical tie.
inline constexpr double kTieTolerance = 1e-13;
/// Oversampling beyond the Shannon number 2c/pi.
inline constexpr std::size_t kPlungeBuffer = 30;

/// Top of the spectrum of the sinc-kernel operator on L2(-1, 1) at bandwidth c.
///
/// Row n of `modes` holds psi_n at the nodes of `rule`, orthonormal in the
/// rule's weighted inner product and signed so that the first sample with
/// |psi_n| > 1e-8 is positive.
struct ProlateSpectrum {
  double c = 0.0;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd modes;
  QuadratureRule rule;
  /// Two requested eigenvalues agreed within kTieTolerance and were ordered by mode count.
  bool degenerate = false;
  /// Number of requested eigenvalues at or below kNoiseFloor.
  std::size_t noise_floor_modes = 0;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Smallest quadrature order accepted without forcing: ceil(2c/pi) + 30.
inline std::size_t min_prolate_order(double c) {
  return static_cast<std::size_t>(std::ceil(2.0 * c / std::numbers::pi)) + kPlungeBuffer;
}

namespace detail {

inline std::size_t sign_changes(const Eigen::Ref<const Eigen::VectorXd>& v) {
  std::size_t changes = 0;
  int last = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= 1e-8) continue;
    const int s = v(i) > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Nyström discretization of the sinc kernel on (-1, 1) with a Gauss–Legendre
/// rule of the given order, symmetrized as W^1/2 K W^1/2.
inline ProlateSpectrum prolate_spectrum(double c, std::size_t n_modes, std::size_t order,
                                        bool force = false) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw invalid_argument("prolate_spectrum: c must be positive and finite");
  if (n_modes == 0) throw invalid_argument("prolate_spectrum: at least one mode is required");
  if (n_modes > order)
    throw invalid_argument("prolate_spectrum: n_modes (" + std::to_string(n_modes) +
                           ") exceeds quadrature order (" + std::to_string(order) + ")");
  if (!force && order < min_prolate_order(c))
    throw invalid_argument("prolate_spectrum: order " + std::to_string(order) +
                           " is below ceil(2c/pi) + 30 = " +
                           std::to_string(min_prolate_order(c)) + "; pass force to override");

  ProlateSpectrum spec;
  spec.c = c;
  spec.rule = gauss_legendre_rule(order);
  const auto& x = spec.rule.nodes;
  const auto n = static_cast<Eigen::Index>(order);

  Eigen::VectorXd sqrt_w(n);
  for (Eigen::Index i = 0; i < n; ++i) sqrt_w(i) = std::sqrt(spec.rule.weights[i]);

  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double v = sqrt_w(i) * sinc_kernel(c, x[i], x[j]) * sqrt_w(j);
      a(i, j) = v;
      a(j, i) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw numerical_failure("prolate_spectrum: symmetric eigensolver did not converge", order);

  // Eigen returns ascending order.
  std::vector<Eigen::Index> idx(order);
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::reverse(idx.begin(), idx.end());
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  // Ties among the requested modes: fewer sign changes first.
  for (std::size_t k = 0; k + 1 < n_modes; ++k) {
    const double hi = values(idx[k]);
    const double lo = values(idx[k + 1]);
    if (hi <= kNoiseFloor || lo <= kNoiseFloor) break;
    if (hi - lo < kTieTolerance) {
      spec.degenerate = true;
      if (detail::sign_changes(vectors.col(idx[k])) > detail::sign_changes(vectors.col(idx[k + 1])))
        std::swap(idx[k], idx[k + 1]);
    }
  }

  spec.eigenvalues.resize(n_modes);
  spec.modes.resize(static_cast<Eigen::Index>(n_modes), n);
  for (std::size_t k = 0; k < n_modes; ++k) {
    spec.eigenvalues[k] = values(idx[k]);
    if (spec.eigenvalues[k] <= kNoiseFloor) ++spec.noise_floor_modes;

    Eigen::VectorXd psi = vectors.col(idx[k]).cwiseQuotient(sqrt_w);
    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) norm2 += spec.rule.weights[i] * psi(i) * psi(i);
    psi /= std::sqrt(norm2);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(psi(i)) > 1e-8) {
        if (psi(i) < 0.0) psi = -psi;
        break;
      }
    }
    spec.modes.row(static_cast<Eigen::Index>(k)) = psi.transpose();
  }
  return spec;
}

/// Same, with the order set to the oversampling minimum plus a margin of 10.
inline ProlateSpectrum prolate_spectrum(double c, std::size_t n_modes) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw invalid_argument("prolate_spectrum: c must be positive and finite");
  return prolate_spectrum(c, n_modes, std::max(min_prolate_order(c) + 10, n_modes));
}

/// Leading term of the large-c asymptotics: 1 - 4 sqrt(pi) sqrt(c) exp(-2c).
inline double lambda0_asymptotic(double c) {
  return 1.0 - 4.0 * std::sqrt(std::numbers::pi) * std::sqrt(c) * std::exp(-2.0 * c);
}

/// Band-limited extension of psi_n to the whole line,
/// (1 / lambda_n) * sum_j w_j k(x, x_j) psi_n(x_j). Inside (-1, 1) it is the
/// Nyström interpolant of psi_n.
inline double pswf_extend(const ProlateSpectrum& spec, std::size_t n, double x) {
  if (n >= spec.size())
    throw invalid_argument("pswf_extend: mode index " + std::to_string(n) + " out of range (" +
                           std::to_string(spec.size()) + " modes)");
  const auto& nodes = spec.rule.nodes;
  const auto& weights = spec.rule.weights;
  const auto row = static_cast<Eigen::Index>(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    sum += weights[j] * sinc_kernel(spec.c, x, nodes[j]) * spec.modes(row, static_cast<Eigen::Index>(j));
  return sum / spec.eigenvalues[n];
}

}  // namespace prolate
