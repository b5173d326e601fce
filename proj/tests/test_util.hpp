#pragma once

#include <cmath>
#include <cstdint>

#include "harmsum/numerics.hpp"

namespace testutil {

/// Distance between a and b in units of the spacing of b.
inline long double ulps(long double a, long double b) {
  const long double spacing = std::nextafter(std::fabs(b), INFINITY) - std::fabs(b);
  return std::fabs(a - b) / spacing;
}

/// Spacing of long doubles at |x|.
inline long double spacing(long double x) {
  return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x);
}

}  // namespace testutil
