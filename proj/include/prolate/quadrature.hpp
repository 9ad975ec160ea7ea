#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "prolate/error.hpp"

namespace prolate {

/// Gauss–Legendre nodes and weights on (-1, 1), nodes ascending.
struct QuadratureRule {
  std::size_t order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// P_n(z) and P_{n-1}(z) by the three-term recurrence.
inline void legendre_pair(std::size_t n, double z, double& pn, double& pn1) {
  double p1 = 1.0;
  double p2 = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * static_cast<double>(j) - 1.0) * z * p2 - (static_cast<double>(j) - 1.0) * p3) /
         static_cast<double>(j);
  }
  pn = p1;
  pn1 = p2;
}

}  // namespace detail

inline QuadratureRule gauss_legendre_rule(std::size_t order) {
  if (order == 0) throw invalid_argument("gauss_legendre_rule: order must be at least 1");

  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  const double n = static_cast<double>(order);
  const std::size_t half = (order + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    const bool centre = (order % 2 == 1) && (i == half - 1);
    if (centre) z = 0.0;

    double pn = 0.0, pn1 = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100 && !centre; ++iter) {
      detail::legendre_pair(order, z, pn, pn1);
      dp = n * (z * pn - pn1) / (z * z - 1.0);
      const double step = pn / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    detail::legendre_pair(order, z, pn, pn1);
    dp = n * (z * pn - pn1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);

    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

/// Affine image of a rule on (-1, 1) onto (a, b).
inline void map_rule(const QuadratureRule& rule, double a, double b, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.order; ++i) {
    nodes.push_back(mid + half * rule.nodes[i]);
    weights.push_back(half * rule.weights[i]);
  }
}

}  // namespace prolate
