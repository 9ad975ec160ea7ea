#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "prolate/error.hpp"
#include "prolate/limiting_operators.hpp"
#include "prolate/line_grid.hpp"
#include "prolate/prolate_spectrum.hpp"

namespace prolate {

/// |f(x)| <= M exp(-a x^2 / 2) and |f^(xi)| <= M exp(-b xi^2 / 2).
class GaussianEnvelope {
 public:
  GaussianEnvelope(double M, double a, double b) : M_(M), a_(a), b_(b) {
    if (!(M > 0.0) || !(a > 0.0) || !(b > 0.0))
      throw invalid_argument("GaussianEnvelope: M, a, b must be positive");
  }

  double M() const noexcept { return M_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  /// ab >= 4: only f = 0 fits both envelopes.
  bool forces_zero() const noexcept { return a_ * b_ >= 4.0; }

  /// The time profile M exp(-a x^2 / 2), which saturates the time envelope.
  GridFunction extremal(GridPtr grid) const {
    const double a = a_, m = M_;
    return GridFunction::sample(std::move(grid), [a, m](double x) { return m * std::exp(-0.5 * a * x * x); });
  }

 private:
  double M_, a_, b_;
};

/// M^2 / (a tau) exp(-a tau^2), bounding ||f - chi f||^2.
inline double time_tail_bound(const GaussianEnvelope& env, double tau) {
  if (!(tau > 0.0)) throw invalid_argument("time_tail_bound: tau must be positive");
  return env.M() * env.M() / (env.a() * tau) * std::exp(-env.a() * tau * tau);
}

/// M^2 / (b omega) exp(-b omega^2), bounding ||f - S f||^2.
inline double freq_tail_bound(const GaussianEnvelope& env, double omega) {
  if (!(omega > 0.0)) throw invalid_argument("freq_tail_bound: omega must be positive");
  return env.M() * env.M() / (env.b() * omega) * std::exp(-env.b() * omega * omega);
}

/// 2 int_tau^inf exp(-a x^2) dx = sqrt(pi / a) erfc(sqrt(a) tau).
inline double exact_gaussian_tail(double a, double tau) {
  if (!(a > 0.0)) throw invalid_argument("exact_gaussian_tail: a must be positive");
  if (!(tau >= 0.0)) throw invalid_argument("exact_gaussian_tail: tau must be nonnegative");
  return std::sqrt(std::numbers::pi / a) * std::erfc(std::sqrt(a) * tau);
}

struct QuadraticForm {
  double value = 0.0;      ///< Re <(2I - chi - S) f, f>
  double time_part = 0.0;  ///< ||(I - chi) f||^2
  double band_part = 0.0;  ///< Re <(I - S) f, f>
};

inline QuadraticForm quadratic_form(const GridFunction& f, const LimitingOperators& ops) {
  ops.check_grid(f);
  const Eigen::VectorXcd v = f.weighted();
  const Eigen::MatrixXcd s = ops.S.cast<std::complex<double>>();
  const Eigen::MatrixXcd t = ops.T.cast<std::complex<double>>();
  const double norm2 = v.squaredNorm();

  QuadraticForm q;
  for (std::size_t i = 0; i < f.size(); ++i)
    q.time_part += (1.0 - ops.chi[i]) * std::norm(v(static_cast<Eigen::Index>(i)));
  q.band_part = norm2 - v.dot(s * v).real();
  q.value = 2.0 * norm2 - v.dot(t * v).real();
  return q;
}

/// 1 - sqrt(lambda0), the floor of the spectrum of 2I - chi - S.
inline double min_eig_lower_bound(double lambda0) {
  if (!(lambda0 > 0.0 && lambda0 < 1.0))
    throw invalid_argument("min_eig_lower_bound: lambda0 must lie in (0, 1)");
  return 1.0 - std::sqrt(lambda0);
}

struct HardyMargin {
  double lhs = 0.0;    ///< 2 sqrt(pi) omega exp(-2 omega^2)
  double rhs = 0.0;    ///< M^2 / omega exp(-2 omega^2)
  double ratio = 0.0;  ///< lhs / rhs = 2 sqrt(pi) omega^2 / M^2
};

inline HardyMargin hardy_margin(double omega, double M) {
  if (!(omega > 0.0)) throw invalid_argument("hardy_margin: omega must be positive");
  if (!(M > 0.0)) throw invalid_argument("hardy_margin: M must be positive");
  const double e = std::exp(-2.0 * omega * omega);
  HardyMargin h;
  h.lhs = 2.0 * std::sqrt(std::numbers::pi) * omega * e;
  h.rhs = M * M / omega * e;
  // Both sides share exp(-2 omega^2); dividing it out keeps the ratio exact
  // even where the exponential underflows.
  h.ratio = (2.0 * std::sqrt(std::numbers::pi) * omega) / (M * M / omega);
  return h;
}

namespace detail {

inline void require_unit_norm(const GridFunction& f, const char* who) {
  const double n = f.norm();
  if (std::abs(n - 1.0) > 1e-8)
    throw invalid_argument(std::string(who) + ": f must have unit norm, got " + std::to_string(n));
}

}  // namespace detail

/// Square root of the energy of f in (-T/2, T/2).
inline double concentration_alpha(const GridFunction& f, double T_width) {
  if (!(T_width > 0.0)) throw invalid_argument("concentration_alpha: T must be positive");
  if (T_width / 2.0 >= f.grid().half_width)
    throw invalid_argument("concentration_alpha: T/2 must be below the grid half width");
  detail::require_unit_norm(f, "concentration_alpha");
  const auto& g = f.grid();
  double e = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::abs(g.points[i]) < T_width / 2.0) e += g.weights[i] * std::norm(f[i]);
  return std::sqrt(e);
}

/// Square root of the energy of f^ in (-Omega, Omega), as sqrt(Re <S f, f>).
inline double concentration_beta(const GridFunction& f, double Omega) {
  detail::require_unit_norm(f, "concentration_beta");
  const Eigen::MatrixXd s = build_band_limiter(f.grid(), Omega);
  const Eigen::VectorXcd v = f.weighted();
  const double e = v.dot(s.cast<std::complex<double>>() * v).real();
  return std::sqrt(std::max(0.0, e));
}

struct LandauPollakReport {
  double T_width = 0.0;
  double Omega = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double lhs = 0.0;  ///< arccos alpha + arccos beta
  double rhs = 0.0;  ///< arccos sqrt(lambda0(Omega T / 2))
  double margin = 0.0;
};

inline LandauPollakReport landau_pollak_check(const GridFunction& f, double T_width, double Omega,
                                              const ProlateSpectrum& spec) {
  const double c = 0.5 * Omega * T_width;
  if (std::abs(spec.c - c) > 1e-12 * std::max(1.0, c))
    throw invalid_argument("landau_pollak_check: spectrum computed at c = " + std::to_string(spec.c) +
                           " but Omega T / 2 = " + std::to_string(c));
  LandauPollakReport r;
  r.T_width = T_width;
  r.Omega = Omega;
  r.alpha = concentration_alpha(f, T_width);
  r.beta = concentration_beta(f, Omega);
  r.lhs = std::acos(std::min(1.0, r.alpha)) + std::acos(std::min(1.0, r.beta));
  r.rhs = std::acos(std::sqrt(std::clamp(spec.eigenvalues.front(), 0.0, 1.0)));
  r.margin = r.lhs - r.rhs;
  return r;
}

struct ArccosExpansion {
  double exact = 0.0;   ///< arccos(1 - x)
  double approx = 0.0;  ///< sqrt(2x)
  double ratio = 0.0;
};

inline ArccosExpansion arccos_expansion_check(double x) {
  if (!(x > 0.0 && x <= 0.5)) throw invalid_argument("arccos_expansion_check: x must lie in (0, 0.5]");
  ArccosExpansion r;
  r.exact = std::acos(1.0 - x);
  r.approx = std::sqrt(2.0 * x);
  r.ratio = r.exact / r.approx;
  return r;
}

/// Links of the arccos route to the contradiction, for a = b = 2 and tau = omega.
struct AltProofReport {
  double omega = 0.0;
  double M = 0.0;

  /// Unit-norm worst case g = e^{-x^2} / ||e^{-x^2}||; its envelope amplitude
  /// is (2/pi)^(1/4) whatever M is.
  double effective_M = 0.0;
  double time_tail = 0.0;          ///< ||(1 - chi) g||^2 = erfc(sqrt(2) omega)
  double time_arccos = 0.0;        ///< arccos ||chi g||
  double time_arccos_bound = 0.0;  ///< 2 M_eff / sqrt(omega) exp(-omega^2)

  double arccos_sqrt_lambda0 = 0.0;  ///< from the computed lambda0(omega^2)
  double arccos_asymptotic = 0.0;    ///< 2 pi^(1/4) sqrt(omega) exp(-omega^2)
  double asymptotic_ratio = 0.0;     ///< numeric / asymptotic

  double final_bound = 0.0;          ///< 4 M / sqrt(omega) exp(-omega^2)
  double contradiction_ratio = 0.0;  ///< pi^(1/4) omega / (2 M)
};

inline AltProofReport alt_proof_chain(double omega, double M, const ProlateSpectrum& spec) {
  if (!(M > 0.0)) throw invalid_argument("alt_proof_chain: M must be positive");
  if (!(omega >= 1.5)) throw invalid_argument("alt_proof_chain: omega must be at least 1.5");
  const double c = omega * omega;
  if (std::abs(spec.c - c) > 1e-12 * std::max(1.0, c))
    throw invalid_argument("alt_proof_chain: spectrum computed at c = " + std::to_string(spec.c) +
                           " but omega^2 = " + std::to_string(c));

  const double pi = std::numbers::pi;
  const double e = std::exp(-omega * omega);
  AltProofReport r;
  r.omega = omega;
  r.M = M;
  r.effective_M = std::pow(2.0 / pi, 0.25);
  r.time_tail = std::erfc(std::sqrt(2.0) * omega);
  r.time_arccos = std::acos(std::sqrt(1.0 - r.time_tail));
  r.time_arccos_bound = 2.0 * r.effective_M / std::sqrt(omega) * e;

  r.arccos_sqrt_lambda0 = std::acos(std::sqrt(std::clamp(spec.eigenvalues.front(), 0.0, 1.0)));
  r.arccos_asymptotic = 2.0 * std::pow(pi, 0.25) * std::sqrt(omega) * e;
  r.asymptotic_ratio = r.arccos_sqrt_lambda0 / r.arccos_asymptotic;

  r.final_bound = 4.0 * M / std::sqrt(omega) * e;
  r.contradiction_ratio = r.arccos_asymptotic / r.final_bound;
  return r;
}

}  // namespace prolate
