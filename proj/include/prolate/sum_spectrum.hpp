#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "prolate/error.hpp"
#include "prolate/limiting_operators.hpp"
#include "prolate/line_grid.hpp"
#include "prolate/prolate_spectrum.hpp"

namespace prolate {

/// Tail-Gram eigen-directions below this fraction of the largest are dropped.
inline constexpr double kExteriorCutoff = 1e-6;
/// Paired eigenvectors satisfy <chi f, f> = (lambda / 2) ||f||^2; this is the
/// accepted relative deviation when classifying Ritz pairs.
inline constexpr double kPairingTolerance = 0.5;

/// Galerkin data for T = chi + S on V = (grid functions on (-L, L)) plus the
/// exterior tails (1 - chi_L) S e_j of the window nodal functions e_j.
///
/// With K the truncated band limiter in weighted coordinates and S^2 = S on
/// the whole line, every form reduces to products of K:
///   tail Gram          (K - K^2)[in, in]
///   S, grid x tail     (K - K^2)[:, in]
///   S, tail x tail     (K - 2K^2 + K^3)[in, in]
/// chi vanishes on the tails since they live outside (-L, L).
struct ExteriorCompletion {
  std::vector<Eigen::Index> window;  ///< grid indices with |x| < tau
  Eigen::MatrixXd grid_tail;         ///< (K - K^2)[:, in]
  Eigen::MatrixXd tail_gram;         ///< (K - K^2)[in, in]
  Eigen::MatrixXd tail_tail;         ///< (K - 2K^2 + K^3)[in, in]
  Eigen::MatrixXd tail_basis;        ///< tail Gram eigenvectors scaled by sigma^-1/2
};

inline ExteriorCompletion make_exterior_completion(const LimitingOperators& ops) {
  ExteriorCompletion ext;
  for (std::size_t i = 0; i < ops.chi.size(); ++i)
    if (ops.chi[i] != 0.0) ext.window.push_back(static_cast<Eigen::Index>(i));

  const Eigen::MatrixXd& k = ops.S;
  const auto m = static_cast<Eigen::Index>(ext.window.size());
  Eigen::MatrixXd k_in(k.rows(), m);
  for (Eigen::Index j = 0; j < m; ++j) k_in.col(j) = k.col(ext.window[j]);

  ext.grid_tail = k_in - k * k_in;
  ext.tail_gram.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) ext.tail_gram.row(i) = ext.grid_tail.row(ext.window[i]);
  ext.tail_gram = 0.5 * (ext.tail_gram + ext.tail_gram.transpose()).eval();
  ext.tail_tail = ext.tail_gram - k_in.transpose() * ext.grid_tail;
  ext.tail_tail = 0.5 * (ext.tail_tail + ext.tail_tail.transpose()).eval();

  if (m == 0) {
    ext.tail_basis.resize(0, 0);
    return ext;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ext.tail_gram);
  if (es.info() != Eigen::Success)
    throw numerical_failure("exterior completion: tail Gram eigensolve failed",
                            static_cast<std::size_t>(m));
  const double top = es.eigenvalues().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i)
    if (top > 0.0 && es.eigenvalues()(i) > kExteriorCutoff * top) keep.push_back(i);
  ext.tail_basis.resize(m, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    ext.tail_basis.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()(keep[c]));
  return ext;
}

/// Comparison of the computed spectrum of chi + S with 1 +- sqrt(lambda_n(omega tau)).
struct SumSpectrumReport {
  double tau = 0.0;
  double omega = 0.0;
  double c = 0.0;

  /// Ritz values on grid + exterior tails, descending, with the fraction of
  /// each Ritz vector's energy inside (-tau, tau).
  std::vector<double> computed_eigenvalues;
  std::vector<double> window_fractions;
  /// Eigenvalues of the plain truncated matrix diag(chi) + S, descending.
  std::vector<double> grid_eigenvalues;
  std::size_t exterior_dimension = 0;

  std::vector<double> prolate_eigenvalues;  ///< lambda_n(c), n < n_report
  std::vector<double> predicted_upper;      ///< 1 + sqrt(lambda_n)
  std::vector<double> predicted_lower;      ///< 1 - sqrt(lambda_n)
  std::vector<double> matched_upper;        ///< NaN when nothing matched
  std::vector<double> matched_lower;
  std::vector<double> residuals_upper;      ///< +inf when nothing matched
  std::vector<double> residuals_lower;

  /// Smallest eigenvalue of 2I - T, and the bound 1 - sqrt(lambda_0) it must respect.
  double lambda_min = 0.0;
  double lambda_min_bound = 0.0;

  double max_residual_upper() const {
    return residuals_upper.empty() ? 0.0 : *std::max_element(residuals_upper.begin(), residuals_upper.end());
  }
  double max_residual_lower() const {
    return residuals_lower.empty() ? 0.0 : *std::max_element(residuals_lower.begin(), residuals_lower.end());
  }
};

/// True when a Ritz pair carries the balanced energy split of an eigenvector
/// off the 0/1 family.
inline bool is_paired(double eigenvalue, double window_fraction) {
  if (!(eigenvalue > 0.0)) return false;
  return std::abs(2.0 * window_fraction / eigenvalue - 1.0) <= kPairingTolerance;
}

inline SumSpectrumReport sum_operator_spectrum(const LimitingOperators& ops, std::size_t n_report) {
  if (!ops.grid) throw invalid_argument("sum_operator_spectrum: operators have no grid");
  const std::size_t n_grid = ops.grid->size();
  if (n_report == 0 || n_report > n_grid)
    throw invalid_argument("sum_operator_spectrum: n_report must be in [1, grid size]");

  SumSpectrumReport rep;
  rep.tau = ops.tau;
  rep.omega = ops.omega;
  rep.c = ops.tau * ops.omega;

  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.T, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numerical_failure("sum_operator_spectrum: eigensolve of T failed", n_grid);
    rep.grid_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::reverse(rep.grid_eigenvalues.begin(), rep.grid_eigenvalues.end());
  }

  const ExteriorCompletion ext = make_exterior_completion(ops);
  const auto ng = static_cast<Eigen::Index>(n_grid);
  const Eigen::Index nt = ext.tail_basis.cols();
  rep.exterior_dimension = static_cast<std::size_t>(nt);

  Eigen::MatrixXd a(ng + nt, ng + nt);
  a.topLeftCorner(ng, ng) = ops.T;
  if (nt > 0) {
    const Eigen::MatrixXd cross = ext.grid_tail * ext.tail_basis;
    a.topRightCorner(ng, nt) = cross;
    a.bottomLeftCorner(nt, ng) = cross.transpose();
    a.bottomRightCorner(nt, nt) = ext.tail_basis.transpose() * ext.tail_tail * ext.tail_basis;
  }
  a = 0.5 * (a + a.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw numerical_failure("sum_operator_spectrum: Ritz eigensolve failed", static_cast<std::size_t>(ng + nt));

  const Eigen::Index total = ng + nt;
  rep.computed_eigenvalues.resize(static_cast<std::size_t>(total));
  rep.window_fractions.resize(static_cast<std::size_t>(total));
  for (Eigen::Index r = 0; r < total; ++r) {
    const Eigen::Index src = total - 1 - r;
    rep.computed_eigenvalues[static_cast<std::size_t>(r)] = es.eigenvalues()(src);
    double frac = 0.0;
    for (Eigen::Index i : ext.window) frac += es.eigenvectors()(i, src) * es.eigenvectors()(i, src);
    rep.window_fractions[static_cast<std::size_t>(r)] = frac;
  }

  const std::size_t order = std::max(min_prolate_order(rep.c) + 20, n_report);
  const ProlateSpectrum spec = prolate_spectrum(rep.c, n_report, order);
  rep.prolate_eigenvalues = spec.eigenvalues;

  std::vector<double> upper, lower;
  for (std::size_t r = 0; r < rep.computed_eigenvalues.size(); ++r) {
    const double v = rep.computed_eigenvalues[r];
    if (!is_paired(v, rep.window_fractions[r])) continue;
    if (v > 1.0) upper.push_back(v);
    else if (v < 1.0) lower.push_back(v);
  }
  std::sort(upper.begin(), upper.end(), std::greater<>());
  std::sort(lower.begin(), lower.end());

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < n_report; ++n) {
    const double s = std::sqrt(std::max(0.0, spec.eigenvalues[n]));
    rep.predicted_upper.push_back(1.0 + s);
    rep.predicted_lower.push_back(1.0 - s);
    rep.matched_upper.push_back(n < upper.size() ? upper[n] : nan);
    rep.matched_lower.push_back(n < lower.size() ? lower[n] : nan);
    rep.residuals_upper.push_back(n < upper.size() ? std::abs(upper[n] - (1.0 + s)) : inf);
    rep.residuals_lower.push_back(n < lower.size() ? std::abs(lower[n] - (1.0 - s)) : inf);
  }

  rep.lambda_min = 2.0 - rep.computed_eigenvalues.front();
  rep.lambda_min_bound = 1.0 - std::sqrt(spec.eigenvalues.front());
  return rep;
}

/// psi_n(x / tau) / sqrt(tau): the mode rescaled to (-tau, tau), extended to
/// the line through the sinc kernel.
inline double scaled_pswf(const ProlateSpectrum& spec, std::size_t n, double x, double tau) {
  return pswf_extend(spec, n, x / tau) / std::sqrt(tau);
}

namespace detail {

inline void check_bandwidth(const ProlateSpectrum& spec, const LimitingOperators& ops, const char* who) {
  const double c = ops.tau * ops.omega;
  if (std::abs(spec.c - c) > 1e-12 * std::max(1.0, c))
    throw invalid_argument(std::string(who) + ": spectrum computed at c = " + std::to_string(spec.c) +
                           " but omega * tau = " + std::to_string(c));
}

}  // namespace detail

/// Relative residual ||T f - lambda f|| / ||f|| of f = psi_n + (lambda - 1) psi~_n
/// with lambda = 1 + sign sqrt(lambda_n + eigenvalue_shift).
///
/// f is represented exactly in the grid + exterior space; the residual norm is
/// assembled from the Galerkin forms using ||S f||^2 = <S f, f>.
inline double eigenfunction_witness(const ProlateSpectrum& spec, const LimitingOperators& ops, std::size_t n,
                                    int sign, double eigenvalue_shift = 0.0) {
  if (n >= spec.size())
    throw invalid_argument("eigenfunction_witness: mode index " + std::to_string(n) + " out of range");
  if (sign != 1 && sign != -1) throw invalid_argument("eigenfunction_witness: sign must be +1 or -1");
  detail::check_bandwidth(spec, ops, "eigenfunction_witness");

  const ExteriorCompletion ext = make_exterior_completion(ops);
  const auto& grid = *ops.grid;
  const auto m = static_cast<Eigen::Index>(ext.window.size());
  const auto ng = static_cast<Eigen::Index>(grid.size());

  const double lambda_n = spec.eigenvalues[n] + eigenvalue_shift;
  const double lambda = 1.0 + sign * std::sqrt(lambda_n);

  // Window samples of the rescaled mode in weighted coordinates.
  Eigen::VectorXd p(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto i = static_cast<std::size_t>(ext.window[j]);
    p(j) = std::sqrt(grid.weights[i]) * scaled_pswf(spec, n, grid.points[i], ops.tau);
  }

  // psi~ = S psi / lambda_n, split into its part on the grid and its tail.
  const double ext_coef = (lambda - 1.0) / lambda_n;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(ng);
  for (Eigen::Index j = 0; j < m; ++j) g(ext.window[j]) = p(j);
  for (Eigen::Index j = 0; j < m; ++j) g += ext_coef * p(j) * ops.S.col(ext.window[j]);
  const Eigen::VectorXd t = ext_coef * p;

  Eigen::VectorXd chi_g(ng);
  for (Eigen::Index i = 0; i < ng; ++i) chi_g(i) = ops.chi[static_cast<std::size_t>(i)] * g(i);

  const Eigen::VectorXd s_g = ops.S * g + ext.grid_tail * t;  // S-form against grid directions
  const double norm2 = g.squaredNorm() + t.dot(ext.tail_gram * t);
  const double chi_form = g.dot(chi_g);
  const double s_form = g.dot(ops.S * g) + 2.0 * g.dot(ext.grid_tail * t) + t.dot(ext.tail_tail * t);
  const double cross = chi_g.dot(s_g);  // <S chi f, f>

  const double tf_norm2 = chi_form + s_form + 2.0 * cross;
  const double tf_f = chi_form + s_form;
  const double res2 = tf_norm2 - 2.0 * lambda * tf_f + lambda * lambda * norm2;
  return std::sqrt(std::max(0.0, res2) / norm2);
}

struct ZeroSpectrumWitness {
  int n = 0;
  double ratio = 0.0;           ///< ||T f_n|| / ||f_n||
  double norm = 0.0;            ///< ||f_n||
  double reference_norm = 0.0;  ///< ||f_0||
  bool norm_constant = false;   ///< | ||f_n|| - ||f_0|| | <= 1e-6
};

/// f_n(x) = exp(i n x) exp(-(x - n)^2): unit-scale bumps drifting away in time
/// and frequency, along which ||T f_n|| / ||f_n|| -> 0.
inline ZeroSpectrumWitness zero_spectrum_witness(const LimitingOperators& ops, int n) {
  if (n < 0) throw invalid_argument("zero_spectrum_witness: n must be nonnegative");
  if (ops.grid->half_width < n + 6.0)
    throw invalid_argument("zero_spectrum_witness: half width " + std::to_string(ops.grid->half_width) +
                           " < n + 6 = " + std::to_string(n + 6));
  auto bump = [](int k) {
    return [k](double x) {
      const double d = x - k;
      return std::polar(std::exp(-d * d), static_cast<double>(k) * x);
    };
  };
  const GridFunction fn = GridFunction::sample(ops.grid, bump(n));
  const GridFunction f0 = GridFunction::sample(ops.grid, bump(0));

  ZeroSpectrumWitness w;
  w.n = n;
  w.norm = fn.norm();
  w.reference_norm = f0.norm();
  w.norm_constant = std::abs(w.norm - w.reference_norm) <= 1e-6;
  w.ratio = ops.apply_T(fn).norm() / w.norm;
  return w;
}

}  // namespace prolate
