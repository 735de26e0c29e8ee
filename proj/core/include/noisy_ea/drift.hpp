#pragma once

#include <cstdint>
#include <optional>

#include "noisy_ea/algorithms.hpp"
#include "noisy_ea/random.hpp"
#include "noisy_ea/statistics.hpp"

namespace noisy_ea {

/// One-generation drift quantities at parent distance d.
///
///   delta_plus     E[max(0, d - d~_y)]   positive part of the noisy winner's move
///   delta_minus    E[max(0, d~_y - d)]   negative part
///   delta_com      E[d - d_y]            accepted individual under comma selection
///   delta_plus_sel E[(d - d_y) 1[d~ >= d~_y]]  accepted individual under plus selection
///
/// d~_y is the noisy winner's distance, d_y its true distance and d~ the
/// distance of the re-evaluated noisy parent.
struct DriftEstimate {
  Estimate delta_plus;
  Estimate delta_minus;
  std::optional<Estimate> delta_com;
  std::optional<Estimate> delta_plus_sel;
  std::uint64_t samples = 0;
  bool exact = false;
};

enum class DriftPath {
  distance,   // binomial flip counts on the zero and one groups
  bitstring,  // materialized parent, mutation and noise
};

/// Monte Carlo estimate of delta_plus and delta_minus. Uses n, lambda, chi and q
/// from `config`. On the distance path each noisy offspring distance is
/// d - Bin(d, r/n) + Bin(n - d, r/n). Requires 1 <= d <= n and samples >= 10^3.
DriftEstimate estimate_noisy_winner_drift(int d, const AlgoConfig& config, std::uint64_t samples,
                                          RandomSource& rng,
                                          DriftPath path = DriftPath::distance);

/// Monte Carlo estimate of all four drift quantities by simulating one full
/// generation at bitstring level from a parent at distance d. Comma and plus
/// quantities come from the same sample stream.
DriftEstimate estimate_selection_drift(int d, const AlgoConfig& config, std::uint64_t samples,
                                       RandomSource& rng);

/// Exact drift by enumerating every (mutation mask, noise mask) pair of an
/// offspring, every λ-tuple of offspring outcomes and every parent noise mask.
/// Tied winners share the weight equally. Limited to n <= 6 and λ <= 3.
DriftEstimate exhaustive_drift_oracle(int n, int lambda, double chi, double q, int d);

/// Exact drift from the bit-group decomposition: the noisy offspring distance
/// law via binomial group counts, the winner's distance via order statistics,
/// and the winner's true distance via expected_offspring_distance_given_groups.
/// No size limit; cost is O(n^2 + n log λ).
DriftEstimate drift_from_group_counts(int n, int lambda, double chi, double q, int d);

}  // namespace noisy_ea
