#include "noisy_ea/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace noisy_ea {

namespace {

// Inversion walks the pmf from zero; above this mean the walk is no cheaper
// than summing trials and (1-p)^n starts to lose precision.
constexpr double kInversionMaxMean = 30.0;

// Up to this many flips, rejection against the already-drawn positions is
// cheaper than a partial shuffle.
constexpr std::uint64_t kRejectionMaxFlips = 24;

}  // namespace

BinomialSampler::BinomialSampler(std::uint64_t trials, double p) : trials_(trials), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability outside [0, 1]");
  complement_ = p > 0.5;
  reduced_p_ = complement_ ? 1.0 - p : p;
  inversion_ = static_cast<double>(trials) * reduced_p_ < kInversionMaxMean;
  if (inversion_ && reduced_p_ > 0.0) {
    p0_ = std::exp(static_cast<double>(trials) * std::log1p(-reduced_p_));
    odds_ = reduced_p_ / (1.0 - reduced_p_);
  }
}

std::uint64_t BinomialSampler::sample_reduced(RandomSource& rng) const {
  if (reduced_p_ <= 0.0 || trials_ == 0) return 0;
  if (inversion_) {
    double u = rng.uniform01();
    double pk = p0_;
    std::uint64_t k = 0;
    while (u >= pk) {
      u -= pk;
      ++k;
      if (k >= trials_) return trials_;
      pk *= odds_ * static_cast<double>(trials_ - k + 1) / static_cast<double>(k);
    }
    return k;
  }
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < trials_; ++i) k += rng.uniform01() < reduced_p_ ? 1 : 0;
  return k;
}

std::uint64_t BinomialSampler::operator()(RandomSource& rng) const {
  const std::uint64_t k = sample_reduced(rng);
  return complement_ ? trials_ - k : k;
}

FlipSampler::FlipSampler(std::size_t n, double rate) : n_(n), count_(n, rate) {}

void FlipSampler::sample(RandomSource& rng, std::vector<std::uint32_t>& out) const {
  out.clear();
  const std::uint64_t k = count_(rng);
  if (k == 0) return;
  if (k <= kRejectionMaxFlips) {
    while (out.size() < k) {
      const auto p = static_cast<std::uint32_t>(rng.uniform_below(n_));
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return;
  }
  std::vector<std::uint32_t> perm(n_);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + rng.uniform_below(n_ - i);
    std::swap(perm[i], perm[j]);
  }
  out.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
}

void validate_mutation_strength(double chi, std::size_t n) {
  if (!(chi > 0.0 && chi <= static_cast<double>(n))) {
    throw std::invalid_argument("mutation strength chi must satisfy 0 < chi <= n (got " +
                                std::to_string(chi) + ", n=" + std::to_string(n) + ")");
  }
}

void validate_noise_strength(double q, std::size_t n) {
  if (!(q >= 0.0 && q <= static_cast<double>(n))) {
    throw std::invalid_argument("noise strength q must satisfy 0 <= q <= n (got " +
                                std::to_string(q) + ", n=" + std::to_string(n) + ")");
  }
}

BitString standard_bit_mutation(const BitString& x, double chi, RandomSource& rng) {
  validate_mutation_strength(chi, x.size());
  std::vector<std::uint32_t> flips;
  FlipSampler(x.size(), chi / static_cast<double>(x.size())).sample(rng, flips);
  BitString y = x;
  y.flip_all(flips);
  return y;
}

BitString apply_prior_noise(const BitString& x, double q, RandomSource& rng) {
  validate_noise_strength(q, x.size());
  if (q == 0.0) return x;
  std::vector<std::uint32_t> flips;
  FlipSampler(x.size(), q / static_cast<double>(x.size())).sample(rng, flips);
  BitString y = x;
  y.flip_all(flips);
  return y;
}

int noisy_fitness(const BitString& x, double q, RandomSource& rng) {
  validate_noise_strength(q, x.size());
  if (q == 0.0) return onemax(x);
  std::vector<std::uint32_t> scratch;
  return noisy_fitness(x, onemax(x), FlipSampler(x.size(), q / static_cast<double>(x.size())),
                       rng, scratch);
}

int noisy_fitness(const BitString& x, int true_fitness, const FlipSampler& noise,
                  RandomSource& rng, std::vector<std::uint32_t>& scratch) {
  noise.sample(rng, scratch);
  int value = true_fitness;
  for (auto p : scratch) value += x.get(p) ? -1 : 1;
  return value;
}

}  // namespace noisy_ea
