#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace osgcoord {

// log(exp(a) + exp(b)) without overflow; tolerates -inf arguments.
inline double log_add_exp(double a, double b) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(sum_i exp(x_i)) with max-subtraction.
inline double log_sum_exp(std::span<const double> xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

// Probability vector exp(x_i) / sum_k exp(x_k) from log weights.
inline std::vector<double> normalize_log(std::span<const double> xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  std::vector<double> p(xs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    p[i] = std::exp(xs[i] - m);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace osgcoord
