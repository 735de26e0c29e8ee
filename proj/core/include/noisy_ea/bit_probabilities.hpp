#pragma once

#include <cstdint>

#include "noisy_ea/random.hpp"

namespace noisy_ea {

struct NoiseMutationParams {
  int n = 0;
  double chi = 1.0;
  double q = 0.0;

  /// Requires n >= 1, 0 < chi <= n and 0 <= q <= n.
  void validate() const;
};

/// r = chi + q - 2 q chi / n: per-bit disagreement between a parent and its
/// noisy offspring is r/n, so the noisy offspring is a rate-r/n mutant.
double combined_rate(const NoiseMutationParams& params);

/// Law of one offspring bit x'_i given whether the noisy offspring bit agrees
/// ("same") or disagrees ("diff") with the parent bit x_i.
struct ConditionalBitProbs {
  double p_same_given_same = 0.0;  // P[x'_i = x_i | x~'_i = x_i]
  double p_same_given_diff = 0.0;  // P[x'_i = x_i | x~'_i != x_i]
  double p_diff_given_same = 0.0;  // P[x'_i != x_i | x~'_i = x_i]
  double p_diff_given_diff = 0.0;  // P[x'_i != x_i | x~'_i != x_i]
};

/// Exact conditional probabilities. Throws std::domain_error if a
/// conditioning event has probability zero (e.g. chi = n with q = 0).
ConditionalBitProbs conditional_bit_probabilities(const NoiseMutationParams& params);

struct ConditionalBitEstimate {
  ConditionalBitProbs probs;
  ConditionalBitProbs standard_errors;
  std::uint64_t samples = 0;
  std::uint64_t same_events = 0;  // draws with x~'_i = x_i
  std::uint64_t diff_events = 0;  // draws with x~'_i != x_i
  // Set when the conditioning event occurred fewer than 100 times.
  bool same_unreliable = false;
  bool diff_unreliable = false;
};

/// Monte Carlo frequencies over `samples` independent (mutation, noise) draws
/// of a single bit. Requires samples >= 10^4. The sample is split into
/// fixed-size chunks seeded from one draw of `rng`, so the result does not
/// depend on the worker count.
ConditionalBitEstimate estimate_conditional_bit_probabilities(const NoiseMutationParams& params,
                                                              std::uint64_t samples,
                                                              RandomSource& rng);

/// Bit groups of a parent x and an observed noisy offspring z.
struct BitGroupCounts {
  int a = 0;        // one in x, one in z
  int b = 0;        // one in x, zero in z
  int c = 0;        // zero in x, one in z
  int d_group = 0;  // zero in x, zero in z

  int total() const noexcept { return a + b + c + d_group; }
};

/// E[d(x') | x~' = z] for the all-ones target, from the group counts of (x, z):
/// p3 A + p4 B + (1 - p4) C + (1 - p3) D with p3 = P[diff | same] and
/// p4 = P[diff | diff].
double expected_offspring_distance_given_groups(const BitGroupCounts& counts,
                                                const NoiseMutationParams& params);

}  // namespace noisy_ea
