#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "prolate/prolate_spectrum.hpp"
#include "prolate/sinc_kernel.hpp"

namespace {

// sin by its Taylor series in long double, independent of std::sin.
long double taylor_sin(long double t) {
  long double term = t, sum = t;
  for (int k = 1; k < 40; ++k) {
    term *= -t * t / ((2 * k) * (2 * k + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(SincKernel, MatchesIndependentSeries) {
  const long double ref = taylor_sin(0.5L) / (0.5L * std::numbers::pi_v<long double>);
  EXPECT_NEAR(prolate::sinc_kernel(1.0, 0.3, -0.2), static_cast<double>(ref), 1e-16);
  EXPECT_NEAR(prolate::sinc_kernel(1.0, 0.3, -0.2), 0.3052117772534128, 1e-15);
}

TEST(SincKernel, DiagonalAndSymmetry) {
  EXPECT_DOUBLE_EQ(prolate::sinc_kernel(3.0, 0.4, 0.4), 3.0 / std::numbers::pi);
  for (double x : {-0.9, -0.1, 0.0, 0.37, 2.5})
    for (double y : {-1.0, 0.2, 0.37 + 1e-9, 4.0})
      EXPECT_EQ(prolate::sinc_kernel(2.0, x, y), prolate::sinc_kernel(2.0, y, x));
}

TEST(SincKernel, BothBranchesNearThreshold) {
  // Either side of the series switch-over, against the long double oracle.
  for (double t : {0.5e-4, 0.99999e-4, 1.00001e-4, 2e-4}) {
    const long double ref = taylor_sin(t) / (std::numbers::pi_v<long double> * t);
    EXPECT_NEAR(prolate::sinc_kernel(1.0, 0.0, t), static_cast<double>(ref), 1e-15) << t;
  }
}

TEST(ProlateSpectrum, SmallBandwidthRankOneLimit) {
  const double c = 0.01;
  const auto spec = prolate::prolate_spectrum(c, 1);
  const double r = spec.eigenvalues[0] / (2.0 * c / std::numbers::pi);
  EXPECT_GE(r, 0.99);
  EXPECT_LE(r, 1.0);
}

TEST(ProlateSpectrum, ReferenceValuesAtC3) {
  // 30-digit Nystrom run (mpmath, order 60).
  const double ref[] = {0.97582863480923594, 0.70996323854477223, 0.20513867866257184, 0.018203799540436224};
  const auto spec = prolate::prolate_spectrum(3.0, 4);
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(spec.eigenvalues[n], ref[n], 1e-12) << n;
  EXPECT_FALSE(spec.degenerate);
}

TEST(ProlateSpectrum, AsymptoticAtC4) {
  const auto spec = prolate::prolate_spectrum(4.0, 1);
  EXPECT_NEAR(prolate::lambda0_asymptotic(4.0), 0.9952433, 1e-7);
  EXPECT_NEAR(spec.eigenvalues[0], prolate::lambda0_asymptotic(4.0), 2e-3);
}

TEST(ProlateSpectrum, AsymptoticFormula) {
  EXPECT_NEAR(1.0 - prolate::lambda0_asymptotic(8.0), 2.2567e-6, 1e-10);
  EXPECT_GT(prolate::lambda0_asymptotic(8.0), prolate::lambda0_asymptotic(4.0));
}

TEST(ProlateSpectrum, EigenvaluesInsideUnitInterval) {
  for (double c : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto spec = prolate::prolate_spectrum(c, 4);
    EXPECT_LT(spec.eigenvalues[0], 1.0 - 1e-12) << c;
    for (std::size_t n = 0; n < spec.size(); ++n) {
      if (n < spec.size() - spec.noise_floor_modes) {
        EXPECT_GT(spec.eigenvalues[n], 0.0) << c;
      }
      if (n > 0) {
        EXPECT_LT(spec.eigenvalues[n], spec.eigenvalues[n - 1]);
      }
    }
  }
}

TEST(ProlateSpectrum, RefinementConvergence) {
  for (double c : {1.0, 4.0, 8.0}) {
    const std::size_t order = prolate::min_prolate_order(c);
    const auto a = prolate::prolate_spectrum(c, 1, order);
    const auto b = prolate::prolate_spectrum(c, 1, 2 * order);
    EXPECT_LT(std::abs(a.eigenvalues[0] - b.eigenvalues[0]), 1e-10) << c;
  }
}

TEST(ProlateSpectrum, NodeReversalInvariance) {
  const double c = 2.0;
  const auto spec = prolate::prolate_spectrum(c, 5);
  const auto& r = spec.rule;
  const auto n = static_cast<Eigen::Index>(r.order);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = std::sqrt(r.weights[i] * r.weights[j]) * prolate::sinc_kernel(c, -r.nodes[i], -r.nodes[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < 5; ++k)
    EXPECT_NEAR(es.eigenvalues()(n - 1 - k), spec.eigenvalues[k], 1e-12);
}

TEST(ProlateSpectrum, ModesAlternateParityAndAreOrthonormal) {
  const auto spec = prolate::prolate_spectrum(3.0, 5);
  const auto& w = spec.rule.weights;
  const auto N = spec.rule.order;
  for (std::size_t n = 0; n < 5; ++n) {
    const double sgn = n % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < N; ++i)
      EXPECT_NEAR(spec.modes(n, N - 1 - i), sgn * spec.modes(n, i), 1e-8);
    for (std::size_t m = 0; m <= n; ++m) {
      double ip = 0.0;
      for (std::size_t i = 0; i < N; ++i) ip += w[i] * spec.modes(n, i) * spec.modes(m, i);
      EXPECT_NEAR(ip, m == n ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(ProlateSpectrum, SignConvention) {
  const auto spec = prolate::prolate_spectrum(3.0, 4);
  for (Eigen::Index n = 0; n < 4; ++n) {
    for (Eigen::Index i = 0; i < spec.modes.cols(); ++i) {
      if (std::abs(spec.modes(n, i)) > 1e-8) {
        EXPECT_GT(spec.modes(n, i), 0.0);
        break;
      }
    }
  }
}

TEST(ProlateSpectrum, Preconditions) {
  EXPECT_THROW(prolate::prolate_spectrum(3.0, 50, 40), prolate::invalid_argument);
  EXPECT_THROW(prolate::prolate_spectrum(3.0, 2, 20), prolate::invalid_argument);
  EXPECT_NO_THROW(prolate::prolate_spectrum(3.0, 2, 20, true));
  EXPECT_THROW(prolate::prolate_spectrum(-1.0, 2), prolate::invalid_argument);
  EXPECT_THROW(prolate::prolate_spectrum(1.0, 0), prolate::invalid_argument);
}

TEST(ProlateSpectrum, NoiseFloorModesAreCounted) {
  const auto spec = prolate::prolate_spectrum(0.5, 30, 40);
  EXPECT_GT(spec.noise_floor_modes, 0u);
  EXPECT_EQ(spec.size(), 30u);
}

TEST(PswfExtend, RestrictionAndDecay) {
  const auto spec = prolate::prolate_spectrum(3.0, 2);
  for (std::size_t i = 0; i < spec.rule.order; i += 7)
    EXPECT_NEAR(prolate::pswf_extend(spec, 0, spec.rule.nodes[i]), spec.modes(0, i), 1e-6);
  const double at5 = prolate::pswf_extend(spec, 0, 5.0);
  EXPECT_TRUE(std::isfinite(at5));
  EXPECT_LT(std::abs(at5), std::abs(prolate::pswf_extend(spec, 0, 0.0)));
  EXPECT_NEAR(prolate::pswf_extend(spec, 1, 0.0), 0.0, 1e-8);
  EXPECT_THROW(prolate::pswf_extend(spec, 2, 0.0), prolate::invalid_argument);
}

TEST(PswfExtend, ExtensionIsBandLimitedEigenfunction) {
  // Off the interval the extension must still satisfy lambda psi~ = S chi psi~,
  // which is its definition; check it against a finer rule.
  const auto coarse = prolate::prolate_spectrum(2.0, 1);
  const auto fine = prolate::prolate_spectrum(2.0, 1, 4 * coarse.rule.order);
  for (double x : {-3.0, -1.5, 1.2, 7.0})
    EXPECT_NEAR(prolate::pswf_extend(coarse, 0, x), prolate::pswf_extend(fine, 0, x), 1e-10) << x;
}
