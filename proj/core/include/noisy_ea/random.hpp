#pragma once

#include <array>
#include <cstdint>

namespace noisy_ea {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// A stream is identified by its 64-bit key (the seed); values are produced
/// by encrypting an incrementing 128-bit counter. Distinct seeds select
/// distinct keyed permutations, so derived streams never share state.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed) noexcept : key_(seed) {}

  std::uint64_t seed() const noexcept { return key_; }

  std::uint64_t next_u64() noexcept;
  std::uint64_t operator()() noexcept { return next_u64(); }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  bool bernoulli(double p) noexcept { return uniform01() < p; }

  /// Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> counter,
                                                   std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t key_;
  std::uint64_t counter_lo_ = 0;
  std::uint64_t counter_hi_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for index `index` of `seed`. Injective in `index` for a fixed seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Two-level derivation, injective over (outer, inner) pairs with both < 2^32.
std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t outer, std::uint32_t inner) noexcept;

inline RandomSource derive(std::uint64_t seed, std::uint64_t index) noexcept {
  return RandomSource(derive_seed(seed, index));
}

}  // namespace noisy_ea
