#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "prolate/error.hpp"

namespace prolate {

namespace detail {

inline std::vector<std::complex<double>> nonzero_eigenvalues(const Eigen::MatrixXd& m, double zero_tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success)
    throw numerical_failure("nonzero_eigenvalues: eigensolver failed", static_cast<std::size_t>(m.rows()));
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) > zero_tol) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace detail

/// Largest distance between the nonzero eigenvalues of AB and BA, matched
/// greedily as multisets. Returns +inf when the counts differ.
inline double nonzero_spectrum_mismatch(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                        double zero_tol = 1e-10) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw invalid_argument("nonzero_spectrum_mismatch: A is " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + ", B is " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()));
  auto ab = detail::nonzero_eigenvalues(a * b, zero_tol);
  auto ba = detail::nonzero_eigenvalues(b * a, zero_tol);
  if (ab.size() != ba.size()) return std::numeric_limits<double>::infinity();

  double worst = 0.0;
  std::vector<bool> used(ba.size(), false);
  for (const auto& z : ab) {
    std::size_t best = ba.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ba.size(); ++j) {
      if (used[j]) continue;
      if (const double d = std::abs(z - ba[j]); d < dist) {
        dist = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, dist);
  }
  return worst;
}

/// ||(lambda I - P)((1/lambda) I + 1/(lambda(lambda - 1)) P) - I||_max for an
/// idempotent P and lambda outside {0, 1}.
inline double idempotent_resolvent_defect(const Eigen::MatrixXd& p, double lambda) {
  if (p.rows() != p.cols()) throw invalid_argument("idempotent_resolvent_defect: matrix not square");
  if (lambda == 0.0 || lambda == 1.0)
    throw invalid_argument("idempotent_resolvent_defect: lambda must avoid 0 and 1");
  const auto n = p.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd inv = id / lambda + p / (lambda * (lambda - 1.0));
  return ((lambda * id - p) * inv - id).cwiseAbs().maxCoeff();
}

}  // namespace prolate
