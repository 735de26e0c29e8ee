#pragma once

#include <cstdint>
#include <vector>

#include "noisy_ea/bitstring.hpp"
#include "noisy_ea/random.hpp"

namespace noisy_ea {

/// Binomial(trials, p) sampler with its setup cost paid once.
///
/// Small means use sequential inversion; otherwise the count is summed from
/// individual Bernoulli trials. Both are exact.
class BinomialSampler {
 public:
  BinomialSampler() = default;
  BinomialSampler(std::uint64_t trials, double p);

  std::uint64_t trials() const noexcept { return trials_; }
  double probability() const noexcept { return p_; }

  std::uint64_t operator()(RandomSource& rng) const;

 private:
  std::uint64_t sample_reduced(RandomSource& rng) const;

  std::uint64_t trials_ = 0;
  double p_ = 0.0;
  double reduced_p_ = 0.0;  // min(p, 1 - p)
  bool complement_ = false;
  bool inversion_ = true;
  double p0_ = 1.0;    // (1 - reduced_p)^trials
  double odds_ = 0.0;  // reduced_p / (1 - reduced_p)
};

/// Draws the set of positions flipped when each of n bits flips independently
/// with probability `rate`: a Binomial(n, rate) count, then that many distinct
/// positions chosen uniformly.
class FlipSampler {
 public:
  FlipSampler() = default;
  FlipSampler(std::size_t n, double rate);

  std::size_t size() const noexcept { return n_; }
  double rate() const noexcept { return count_.probability(); }

  /// Replaces the contents of `out` with the flipped positions (unordered).
  void sample(RandomSource& rng, std::vector<std::uint32_t>& out) const;

 private:
  std::size_t n_ = 0;
  BinomialSampler count_;
};

/// Number of one-bits.
inline int onemax(const BitString& x) noexcept { return static_cast<int>(x.count_ones()); }

/// Number of zero-bits, the Hamming distance to the all-ones optimum.
inline int distance_to_optimum(const BitString& x) noexcept {
  return static_cast<int>(x.size()) - onemax(x);
}

/// Copy of x with every bit flipped independently with probability chi/n.
/// Throws std::invalid_argument unless 0 < chi <= n.
BitString standard_bit_mutation(const BitString& x, double chi, RandomSource& rng);

/// Copy of x with every bit flipped independently with probability q/n.
/// Throws std::invalid_argument unless 0 <= q <= n.
BitString apply_prior_noise(const BitString& x, double q, RandomSource& rng);

/// OneMax of a freshly noised copy of x. Same preconditions as apply_prior_noise.
int noisy_fitness(const BitString& x, double q, RandomSource& rng);

/// noisy_fitness with a prepared noise sampler; `scratch` holds flip positions.
int noisy_fitness(const BitString& x, int true_fitness, const FlipSampler& noise,
                  RandomSource& rng, std::vector<std::uint32_t>& scratch);

void validate_mutation_strength(double chi, std::size_t n);
void validate_noise_strength(double q, std::size_t n);

}  // namespace noisy_ea
