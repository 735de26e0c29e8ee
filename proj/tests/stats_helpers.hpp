#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

namespace test_support {

// Pearson statistic for observed counts against expected probabilities. Bins
// with expected count below 5 are pooled with their neighbour.
struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double critical = 0.0;  // upper alpha quantile
  bool rejects() const { return statistic > critical; }
};

inline double chi_square_quantile(int dof, double alpha) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

inline ChiSquare goodness_of_fit(const std::vector<std::uint64_t>& observed,
                                 const std::vector<double>& probs, double alpha) {
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  ChiSquare out;
  double obs = 0.0, expct = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs += static_cast<double>(observed[i]);
    expct += probs[i] * total;
    if (expct >= 5.0 || i + 1 == observed.size()) {
      if (expct > 0.0) {
        out.statistic += (obs - expct) * (obs - expct) / expct;
        ++bins;
      }
      obs = expct = 0.0;
    }
  }
  out.dof = bins - 1;
  out.critical = chi_square_quantile(out.dof, alpha);
  return out;
}

// Two-sample homogeneity test on binned counts; bins with fewer than 10
// combined observations are pooled with their neighbour.
inline ChiSquare two_sample(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b, double alpha) {
  double na = 0.0, nb = 0.0;
  for (auto v : a) na += static_cast<double>(v);
  for (auto v : b) nb += static_cast<double>(v);
  const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  ChiSquare out;
  double sa = 0.0, sb = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += static_cast<double>(a[i]);
    sb += static_cast<double>(b[i]);
    if (sa + sb >= 10.0 || i + 1 == a.size()) {
      if (sa + sb > 0.0) {
        const double diff = ka * sa - kb * sb;
        out.statistic += diff * diff / (sa + sb);
        ++bins;
      }
      sa = sb = 0.0;
    }
  }
  out.dof = bins - 1;
  out.critical = chi_square_quantile(out.dof, alpha);
  return out;
}

}  // namespace test_support
