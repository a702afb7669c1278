#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mevmix/copula.hpp"
#include "mevmix/model.hpp"

namespace mevmix::testing {

inline double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// d = 2 M4 example: one lag, two shifts, a[1][0] = (0.6, 0.2), a[1][1] = (0.4, 0.8).
inline M4Coefficients m4_example() { return M4Coefficients(1, 2, 2, {0.6, 0.2, 0.4, 0.8}); }

}  // namespace mevmix::testing
