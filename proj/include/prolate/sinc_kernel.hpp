#pragma once

#include <cmath>
#include <numbers>

namespace prolate {

/// Below this |c (x - y)| the kernel switches to its Taylor series.
inline constexpr double kSincSeriesThreshold = 1e-4;

/// sin(c (x - y)) / (pi (x - y)), the kernel of the band-limiting projection.
/// Evaluated on |x - y| so that k(x, y) == k(y, x) bit for bit.
inline double sinc_kernel(double c, double x, double y) noexcept {
  const double d = std::abs(x - y);
  const double t = c * d;
  if (t < kSincSeriesThreshold) {
    const double t2 = t * t;
    return c / std::numbers::pi * (1.0 - t2 / 6.0 + t2 * t2 / 120.0);
  }
  return std::sin(t) / (std::numbers::pi * d);
}

}  // namespace prolate
