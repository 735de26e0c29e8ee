#pragma once

#include <cstdint>
#include <functional>

namespace noisy_ea {

/// Piecewise lower bound on the positive drift of the noisy mutation winner
/// at distance d, with asymptotic (1 - o(1)) factors dropped:
///   d > n / ln λ           : (1/4) floor(ln λ / (2 ln ln λ))
///   n / λ < d <= n / ln λ  : r / (2 e^r)
///   d <= n / λ             : λ d r / (2 n e^r)
/// Throws std::invalid_argument unless 1 <= d <= n, λ >= 3 (ln ln λ > 0) and r > 0.
double h_plus(int d, int lambda, double r, int n);

/// Upper bound 1/n on the negative drift component.
double h_minus(int n);

/// Smallest integer C with (1 - e^{-r})^{C} <= e^{-2}, i.e. ceil(-2 / ln(1 - e^{-r})).
/// λ >= C ln n then makes the negative drift at most 1/n.
std::int64_t lambda_threshold(double r);

/// Sum over i in [1..d0] of 1 / h(i). h must be positive and non-decreasing on
/// that range; violations throw std::invalid_argument.
double variable_drift_bound(int d0, const std::function<double(int)>& h);

/// Expected-runtime bounds obtained by feeding h_plus through the variable
/// drift theorem, with drift lower bounds
///   comma: slack * chi / (q + chi) * h_plus(d)
///   plus : slack * chi e^{-q} / (q + chi) * h_plus(d).
struct RuntimeBounds {
  double r = 0.0;
  double iterations_comma = 0.0;
  double iterations_plus = 0.0;
  double evaluations_comma = 0.0;  // 1 + λ * iterations
  double evaluations_plus = 0.0;   // 1 + (λ + 1) * iterations
};

RuntimeBounds runtime_bounds(int n, int lambda, double chi, double q, int d0,
                             double slack = 1.0);

}  // namespace noisy_ea
