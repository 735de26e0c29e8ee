#include "noisy_ea/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "noisy_ea/bit_probabilities.hpp"

namespace noisy_ea {

double h_plus(int d, int lambda, double r, int n) {
  if (n < 1 || d < 1 || d > n) throw std::invalid_argument("h_plus requires 1 <= d <= n");
  if (lambda < 3) throw std::invalid_argument("h_plus requires lambda > e");
  if (!(r > 0.0)) throw std::invalid_argument("h_plus requires r > 0");

  const double ln_lambda = std::log(static_cast<double>(lambda));
  const double dd = d;
  if (dd > n / ln_lambda) {
    return 0.25 * std::floor(ln_lambda / (2.0 * std::log(ln_lambda)));
  }
  if (dd > static_cast<double>(n) / lambda) {
    return r / (2.0 * std::exp(r));
  }
  return lambda * dd * r / (2.0 * n * std::exp(r));
}

double h_minus(int n) {
  if (n < 1) throw std::invalid_argument("h_minus requires n >= 1");
  return 1.0 / n;
}

std::int64_t lambda_threshold(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("lambda_threshold requires r > 0");
  return static_cast<std::int64_t>(std::ceil(-2.0 / std::log1p(-std::exp(-r))));
}

double variable_drift_bound(int d0, const std::function<double(int)>& h) {
  if (d0 < 0) throw std::invalid_argument("variable_drift_bound requires d0 >= 0");
  double sum = 0.0;
  double previous = 0.0;
  for (int i = 1; i <= d0; ++i) {
    const double value = h(i);
    if (!(value > 0.0)) {
      throw std::invalid_argument("drift bound h must be positive (h(" + std::to_string(i) +
                                  ") = " + std::to_string(value) + ")");
    }
    if (value < previous) {
      throw std::invalid_argument("drift bound h must be non-decreasing (fails at " +
                                  std::to_string(i) + ")");
    }
    previous = value;
    sum += 1.0 / value;
  }
  return sum;
}

RuntimeBounds runtime_bounds(int n, int lambda, double chi, double q, int d0, double slack) {
  RuntimeBounds b;
  b.r = combined_rate({n, chi, q});
  const double comma_factor = slack * chi / (q + chi);
  const double plus_factor = comma_factor * std::exp(-q);
  b.iterations_comma =
      variable_drift_bound(d0, [&](int d) { return comma_factor * h_plus(d, lambda, b.r, n); });
  b.iterations_plus =
      variable_drift_bound(d0, [&](int d) { return plus_factor * h_plus(d, lambda, b.r, n); });
  b.evaluations_comma = 1.0 + lambda * b.iterations_comma;
  b.evaluations_plus = 1.0 + (lambda + 1.0) * b.iterations_plus;
  return b;
}

}  // namespace noisy_ea
