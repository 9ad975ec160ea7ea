#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prolate/error.hpp"
#include "prolate/quadrature.hpp"

namespace prolate {

/// Quadrature discretization of L2(-L, L), the truncated real line.
///
/// Points are Gauss–Legendre nodes on one or more panels; `panel_edges` lists
/// the panel boundaries including -L and L.
struct LineGrid {
  double half_width = 0.0;
  std::vector<double> points;
  std::vector<double> weights;
  std::vector<double> panel_edges;

  std::size_t size() const noexcept { return points.size(); }

  /// Largest gap between consecutive points.
  double max_spacing() const {
    double h = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) h = std::max(h, points[i] - points[i - 1]);
    return h;
  }
};

using GridPtr = std::shared_ptr<const LineGrid>;

/// Single Gauss–Legendre panel on (-L, L).
inline LineGrid build_line_grid(double half_width, std::size_t n) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw invalid_argument("build_line_grid: half width must be positive and finite");
  if (n < 2) throw invalid_argument("build_line_grid: need at least 2 points");

  LineGrid grid;
  grid.half_width = half_width;
  grid.panel_edges = {-half_width, half_width};
  grid.points.reserve(n);
  grid.weights.reserve(n);
  map_rule(gauss_legendre_rule(n), -half_width, half_width, grid.points, grid.weights);
  return grid;
}

/// Composite Gauss–Legendre grid with panels split at `breakpoints`.
///
/// Points are allotted in proportion to panel length (at least 2 per panel);
/// rounding leftovers go to the panel containing the origin, or are split
/// between the two panels meeting there, so symmetric breakpoints give a
/// symmetric grid.
inline LineGrid build_line_grid(double half_width, std::size_t n,
                                std::span<const double> breakpoints) {
  if (breakpoints.empty()) return build_line_grid(half_width, n);
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw invalid_argument("build_line_grid: half width must be positive and finite");

  std::vector<double> edges{-half_width};
  std::vector<double> interior(breakpoints.begin(), breakpoints.end());
  std::sort(interior.begin(), interior.end());
  for (double b : interior) {
    if (!(b > -half_width && b < half_width))
      throw invalid_argument("build_line_grid: breakpoint " + std::to_string(b) +
                             " outside (-L, L)");
    if (b > edges.back()) edges.push_back(b);
  }
  edges.push_back(half_width);

  const std::size_t panels = edges.size() - 1;
  if (n < 2 * panels)
    throw invalid_argument("build_line_grid: " + std::to_string(n) + " points cannot fill " +
                           std::to_string(panels) + " panels");

  std::vector<std::size_t> counts(panels);
  std::size_t used = 0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double share = static_cast<double>(n) * (edges[p + 1] - edges[p]) / (2.0 * half_width);
    counts[p] = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(share + 1e-9)));
    used += counts[p];
  }
  while (used > n) {
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --used;
  }

  std::size_t leftover = n - used;
  std::size_t centre = panels;
  for (std::size_t p = 0; p < panels; ++p)
    if (edges[p] < 0.0 && edges[p + 1] > 0.0) centre = p;
  if (centre < panels) {
    counts[centre] += leftover;
  } else {
    // The origin is a breakpoint: alternate between the panels on either side.
    std::size_t right = 0;
    while (right < panels && edges[right] < 0.0) ++right;
    const std::size_t left = right == 0 ? 0 : right - 1;
    for (std::size_t k = 0; leftover > 0; ++k, --leftover)
      ++counts[(k % 2 == 0) ? left : std::min(right, panels - 1)];
  }

  LineGrid grid;
  grid.half_width = half_width;
  grid.panel_edges = edges;
  grid.points.reserve(n);
  grid.weights.reserve(n);
  for (std::size_t p = 0; p < panels; ++p)
    map_rule(gauss_legendre_rule(counts[p]), edges[p], edges[p + 1], grid.points, grid.weights);
  return grid;
}

/// max(5 tau, 5) + 10 / omega.
inline double default_half_width(double tau, double omega) {
  return std::max(5.0 * tau, 5.0) + 10.0 / omega;
}

/// Complex samples of a function in L2(R) on a LineGrid.
class GridFunction {
 public:
  using value_type = std::complex<double>;

  GridFunction(GridPtr grid, std::vector<value_type> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw invalid_argument("GridFunction: null grid");
    if (values_.size() != grid_->size())
      throw invalid_argument("GridFunction: " + std::to_string(values_.size()) +
                             " values for a grid of " + std::to_string(grid_->size()) + " points");
  }

  template <class F>
  static GridFunction sample(GridPtr grid, F&& fn) {
    std::vector<value_type> v;
    v.reserve(grid->size());
    for (double x : grid->points) v.emplace_back(fn(x));
    return GridFunction(std::move(grid), std::move(v));
  }

  /// Inverse of weighted(): values = coords / sqrt(w).
  static GridFunction from_weighted(GridPtr grid, const Eigen::VectorXcd& coords) {
    std::vector<value_type> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = coords(static_cast<Eigen::Index>(i)) / std::sqrt(grid->weights[i]);
    return GridFunction(std::move(grid), std::move(v));
  }

  const LineGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const value_type> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  value_type operator[](std::size_t i) const { return values_[i]; }

  /// sqrt(w_i) f(x_i): coordinates in which the weighted inner product is Euclidean.
  Eigen::VectorXcd weighted() const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i)
      out(static_cast<Eigen::Index>(i)) = std::sqrt(grid_->weights[i]) * values_[i];
    return out;
  }

  double norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += grid_->weights[i] * std::norm(values_[i]);
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  GridFunction normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw invalid_argument("GridFunction::normalized: zero function");
    std::vector<value_type> v(values_);
    for (auto& z : v) z /= n;
    return GridFunction(grid_, std::move(v));
  }

  GridFunction scaled(value_type s) const {
    std::vector<value_type> v(values_);
    for (auto& z : v) z *= s;
    return GridFunction(grid_, std::move(v));
  }

 private:
  GridPtr grid_;
  std::vector<value_type> values_;
};

/// <f, g> = sum_i w_i f(x_i) conj(g(x_i)).
inline std::complex<double> inner_product(const GridFunction& f, const GridFunction& g) {
  if (f.grid_ptr() != g.grid_ptr()) throw invalid_argument("inner_product: grid mismatch");
  std::complex<double> s = 0.0;
  const auto& w = f.grid().weights;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * std::conj(g[i]);
  return s;
}

}  // namespace prolate
