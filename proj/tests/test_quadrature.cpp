#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numeric>

#include "prolate/quadrature.hpp"

namespace {

template <unsigned N>
void compare_with_boost() {
  using table = boost::math::quadrature::gauss<double, N>;
  const auto rule = prolate::gauss_legendre_rule(N);
  const auto& x = table::abscissa();
  const auto& w = table::weights();
  // Boost lists the nonnegative half, starting at the centre.
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::size_t j = N / 2 + k;
    EXPECT_NEAR(rule.nodes[j], x[k], 1e-15) << "N=" << N << " k=" << k;
    EXPECT_NEAR(rule.weights[j], w[k], 1e-15) << "N=" << N << " k=" << k;
  }
}

}  // namespace

TEST(GaussLegendre, MatchesBoostTables) {
  compare_with_boost<7>();
  compare_with_boost<10>();
  compare_with_boost<20>();
  compare_with_boost<30>();
}

TEST(GaussLegendre, TwoPointRule) {
  const auto r = prolate::gauss_legendre_rule(2);
  EXPECT_NEAR(r.nodes[0], -1.0 / std::sqrt(3.0), 2.3e-16);
  EXPECT_NEAR(r.nodes[1], 1.0 / std::sqrt(3.0), 2.3e-16);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (std::size_t n : {1u, 4u, 9u, 64u, 201u}) {
    const auto r = prolate::gauss_legendre_rule(n);
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-13);
    for (std::size_t k = 0; k < 2 * n; k += 2) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(k));
      EXPECT_NEAR(s, 2.0 / (k + 1.0), 1e-13) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, NodesAscendingAndSymmetric) {
  const auto r = prolate::gauss_legendre_rule(121);
  for (std::size_t i = 1; i < r.order; ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  for (std::size_t i = 0; i < r.order; ++i) EXPECT_EQ(r.nodes[i], -r.nodes[r.order - 1 - i]);
  EXPECT_EQ(r.nodes[60], 0.0);
}

TEST(GaussLegendre, RejectsOrderZero) {
  EXPECT_THROW(prolate::gauss_legendre_rule(0), prolate::invalid_argument);
}

TEST(GaussLegendre, MapRuleAppends) {
  std::vector<double> x{42.0}, w{1.0};
  prolate::map_rule(prolate::gauss_legendre_rule(5), 2.0, 6.0, x, w);
  ASSERT_EQ(x.size(), 6u);
  EXPECT_EQ(x[0], 42.0);
  EXPECT_NEAR(x[3], 4.0, 1e-15);
  EXPECT_NEAR(std::accumulate(w.begin() + 1, w.end(), 0.0), 4.0, 1e-14);
}
