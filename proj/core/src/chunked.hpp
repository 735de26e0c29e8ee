#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "noisy_ea/parallel.hpp"
#include "noisy_ea/random.hpp"

namespace noisy_ea::detail {

// Samples are cut into chunks of this size; chunk k always uses
// derive_seed(master, k), independent of how chunks map to workers.
inline constexpr std::uint64_t kChunkSamples = 1u << 14;

/// Runs body(acc, rng, count) per chunk and merges the accumulators in chunk order.
template <class Accumulator, class Body>
Accumulator chunked_monte_carlo(std::uint64_t samples, std::uint64_t master_seed, Body&& body) {
  const std::uint64_t chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<Accumulator> partial(chunks);
  parallel_for(chunks, [&](std::size_t k) {
    RandomSource rng(derive_seed(master_seed, k));
    const std::uint64_t count = std::min(kChunkSamples, samples - k * kChunkSamples);
    body(partial[k], rng, count);
  });
  Accumulator total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace noisy_ea::detail
