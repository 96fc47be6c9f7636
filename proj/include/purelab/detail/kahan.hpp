#pragma once

#include <span>

namespace purelab::detail {

/// Compensated summation; keeps 1e-12 comparisons honest on long vectors.
inline double kahan_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace purelab::detail
