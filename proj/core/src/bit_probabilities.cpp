#include "noisy_ea/bit_probabilities.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chunked.hpp"
#include "noisy_ea/operators.hpp"

namespace noisy_ea {

void NoiseMutationParams::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  validate_mutation_strength(chi, static_cast<std::size_t>(n));
  validate_noise_strength(q, static_cast<std::size_t>(n));
}

double combined_rate(const NoiseMutationParams& params) {
  params.validate();
  return params.chi + params.q - 2.0 * params.q * params.chi / params.n;
}

ConditionalBitProbs conditional_bit_probabilities(const NoiseMutationParams& params) {
  params.validate();
  const double mut = params.chi / params.n;
  const double noise = params.q / params.n;

  // Joint probabilities of (mutation flip, noise flip) for one bit.
  const double neither = (1.0 - mut) * (1.0 - noise);
  const double both = mut * noise;
  const double noise_only = (1.0 - mut) * noise;
  const double mutation_only = mut * (1.0 - noise);

  const double agree = neither + both;
  const double disagree = noise_only + mutation_only;
  if (agree <= 0.0) throw std::domain_error("noisy offspring never agrees with the parent");
  if (disagree <= 0.0) throw std::domain_error("noisy offspring never disagrees with the parent");

  // The smaller member of each pair is computed directly and the other as its
  // complement, so each pair sums to exactly 1 without losing precision.
  auto split = [](double part, double other, double total, double& p_part, double& p_other) {
    if (part <= other) {
      p_part = part / total;
      p_other = 1.0 - p_part;
    } else {
      p_other = other / total;
      p_part = 1.0 - p_other;
    }
  };
  ConditionalBitProbs p;
  split(neither, both, agree, p.p_same_given_same, p.p_diff_given_same);
  split(noise_only, mutation_only, disagree, p.p_same_given_diff, p.p_diff_given_diff);
  return p;
}

namespace {

struct BitCounts {
  std::uint64_t samples = 0;
  std::uint64_t same = 0;
  std::uint64_t same_and_kept = 0;  // x~' agrees with x and x' agrees with x
  std::uint64_t diff = 0;
  std::uint64_t diff_and_kept = 0;  // x~' disagrees with x but x' agrees

  void merge(const BitCounts& o) {
    samples += o.samples;
    same += o.same;
    same_and_kept += o.same_and_kept;
    diff += o.diff;
    diff_and_kept += o.diff_and_kept;
  }
};

// Conditional frequency with binomial standard error; NaN when the
// conditioning event never happened.
void fill(std::uint64_t hits, std::uint64_t events, double& p, double& complement,
          double& se) {
  if (events == 0) {
    p = complement = se = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  p = static_cast<double>(hits) / static_cast<double>(events);
  complement = static_cast<double>(events - hits) / static_cast<double>(events);
  se = std::sqrt(p * complement / static_cast<double>(events));
}

}  // namespace

ConditionalBitEstimate estimate_conditional_bit_probabilities(const NoiseMutationParams& params,
                                                              std::uint64_t samples,
                                                              RandomSource& rng) {
  params.validate();
  if (samples < 10'000) throw std::invalid_argument("at least 10^4 samples are required");
  const double mut = params.chi / params.n;
  const double noise = params.q / params.n;

  const auto counts = detail::chunked_monte_carlo<BitCounts>(
      samples, rng.next_u64(), [&](BitCounts& acc, RandomSource& r, std::uint64_t count) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const bool mutated = r.uniform01() < mut;
          const bool noised = r.uniform01() < noise;
          if (mutated == noised) {
            ++acc.same;
            if (!mutated) ++acc.same_and_kept;
          } else {
            ++acc.diff;
            if (!mutated) ++acc.diff_and_kept;
          }
        }
        acc.samples += count;
      });

  ConditionalBitEstimate est;
  est.samples = counts.samples;
  est.same_events = counts.same;
  est.diff_events = counts.diff;
  est.same_unreliable = counts.same < 100;
  est.diff_unreliable = counts.diff < 100;
  fill(counts.same_and_kept, counts.same, est.probs.p_same_given_same,
       est.probs.p_diff_given_same, est.standard_errors.p_same_given_same);
  est.standard_errors.p_diff_given_same = est.standard_errors.p_same_given_same;
  fill(counts.diff_and_kept, counts.diff, est.probs.p_same_given_diff,
       est.probs.p_diff_given_diff, est.standard_errors.p_same_given_diff);
  est.standard_errors.p_diff_given_diff = est.standard_errors.p_same_given_diff;
  return est;
}

double expected_offspring_distance_given_groups(const BitGroupCounts& counts,
                                                const NoiseMutationParams& params) {
  params.validate();
  if (counts.a < 0 || counts.b < 0 || counts.c < 0 || counts.d_group < 0 ||
      counts.total() != params.n) {
    throw std::invalid_argument("group counts must be nonnegative and sum to n");
  }
  const auto probs = conditional_bit_probabilities(params);
  const double p3 = probs.p_diff_given_same;
  const double p4 = probs.p_diff_given_diff;
  return p3 * counts.a + p4 * counts.b + (1.0 - p4) * counts.c + (1.0 - p3) * counts.d_group;
}

}  // namespace noisy_ea
