#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace rsscma {

// Jacobian logarithm: max*(a,b) = log(exp(a) + exp(b)).
// Terms more than 40 nats below the maximum cannot move the result at
// double precision, so the correction is skipped there.
inline double max_star(double a, double b) {
  if (b > a) std::swap(a, b);
  const double d = a - b;
  return d > 40.0 ? a : a + std::log1p(std::exp(-d));
}

// log(sum_i exp(x_i)), two pass with the maximum subtracted.
// Summation is commutative for 2-element inputs, which keeps sign-flip
// symmetries of callers exact in floating point.
inline double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) {
    const double d = v - m;
    if (d > -40.0) s += std::exp(d);
  }
  return m + std::log(s);
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double clamp_llr(double x, double bound) {
  return std::clamp(x, -bound, bound);
}

}  // namespace rsscma
