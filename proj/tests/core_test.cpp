#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "noisy_ea/bit_probabilities.hpp"
#include "noisy_ea/bitstring.hpp"
#include "noisy_ea/operators.hpp"
#include "noisy_ea/random.hpp"
#include "stats_helpers.hpp"

using namespace noisy_ea;

namespace {

std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    pmf[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      k * std::log(p) + (n - k) * std::log1p(-p));
  }
  return pmf;
}

}  // namespace

TEST_CASE("onemax and distance examples") {
  CHECK(onemax(BitString::from_string("1111")) == 4);
  CHECK(onemax(BitString::from_string("0000")) == 0);
  CHECK(onemax(BitString::from_string("1010")) == 2);
  CHECK(distance_to_optimum(BitString::from_string("1111")) == 0);
  CHECK(distance_to_optimum(BitString::from_string("0000")) == 4);
  CHECK(distance_to_optimum(BitString::from_string("1010")) == 2);
}

TEST_CASE("onemax plus distance equals n for every string up to n = 12") {
  for (int n = 1; n <= 12; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      BitString x(static_cast<std::size_t>(n));
      int ones = 0;
      for (int i = 0; i < n; ++i) {
        const bool bit = (mask >> i) & 1u;
        x.set(static_cast<std::size_t>(i), bit);
        ones += bit;
      }
      REQUIRE(onemax(x) == ones);
      REQUIRE(onemax(x) + distance_to_optimum(x) == n);
    }
  }
}

TEST_CASE("bitstring basics") {
  const auto x = BitString::from_string("0110");
  CHECK(x.to_string() == "0110");
  CHECK(x.size() == 4);
  CHECK_THROWS_AS(BitString::from_string("01a"), std::invalid_argument);

  auto y = BitString::with_distance(130, 7);
  CHECK(y.size() == 130);
  CHECK(distance_to_optimum(y) == 7);
  y.flip(129);
  CHECK(distance_to_optimum(y) == 6);

  // Padding bits stay clear so popcount is exact.
  const auto ones = BitString::ones(70);
  CHECK(ones.count_ones() == 70);
  CHECK(ones.words()[1] == (std::uint64_t{1} << 6) - 1);

  RandomSource rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto r = BitString::random(100, rng);
    REQUIRE(r.count_ones() <= 100);
    REQUIRE((r.words()[1] >> 36) == 0);
  }
}

TEST_CASE("mutation and noise parameter validation") {
  RandomSource rng(1);
  const auto x = BitString::ones(4);
  CHECK_THROWS_AS(standard_bit_mutation(x, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(standard_bit_mutation(x, -1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(standard_bit_mutation(x, 4.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(apply_prior_noise(x, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(apply_prior_noise(x, 5.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(noisy_fitness(x, 5.0, rng), std::invalid_argument);
}

TEST_CASE("boundary rates") {
  RandomSource rng(2);
  const auto x = BitString::ones(4);
  for (int i = 0; i < 20; ++i) {
    CHECK(standard_bit_mutation(x, 4.0, rng) == BitString::zeros(4));
    CHECK(apply_prior_noise(x, 4.0, rng) == BitString::zeros(4));
  }
  const auto z = BitString::from_string("1001101");
  CHECK(apply_prior_noise(z, 0.0, rng) == z);
  CHECK(noisy_fitness(z, 0.0, rng) == onemax(z));

  // Tiny rate: the offspring is almost always a clone.
  int clones = 0;
  const auto big = BitString::ones(100);
  for (int i = 0; i < 1000; ++i) clones += standard_bit_mutation(big, 1e-6, rng) == big;
  CHECK(clones >= 999);
}

TEST_CASE("noisy fitness mean at n = 4, q = 1") {
  RandomSource rng(3);
  const auto x = BitString::ones(4);
  const int samples = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = noisy_fitness(x, 1.0, rng);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - 3.0) <= 3.0 * se);

  bool differs = false;
  const int first = noisy_fitness(x, 1.0, rng);
  for (int i = 0; i < 100 && !differs; ++i) differs = noisy_fitness(x, 1.0, rng) != first;
  CHECK(differs);
}

TEST_CASE("binomial sampler matches the binomial pmf") {
  struct Case {
    int n;
    double p;
  };
  // Inversion, summed trials, and the complemented branch.
  for (const Case c : {Case{100, 0.02}, Case{1000, 0.5}, Case{200, 0.9}, Case{60, 0.3}}) {
    CAPTURE(c.n);
    CAPTURE(c.p);
    BinomialSampler sampler(static_cast<std::uint64_t>(c.n), c.p);
    RandomSource rng(11);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(c.n) + 1, 0);
    for (int i = 0; i < 1'000'000; ++i) ++counts[sampler(rng)];
    const auto test = test_support::goodness_of_fit(counts, binomial_pmf(c.n, c.p), 0.001);
    CHECK_FALSE(test.rejects());
  }
}

TEST_CASE("flip sampler draws distinct positions with independent pairs") {
  for (const double rate : {0.05, 0.3}) {
    CAPTURE(rate);
    const std::size_t n = 40;
    FlipSampler flips(n, rate);
    RandomSource rng(17);
    std::vector<std::uint32_t> out;
    const int samples = 200000;
    std::uint64_t first = 0, second = 0, both = 0;
    for (int i = 0; i < samples; ++i) {
      flips.sample(rng, out);
      std::set<std::uint32_t> unique(out.begin(), out.end());
      REQUIRE(unique.size() == out.size());
      const bool a = unique.count(3), b = unique.count(29);
      first += a;
      second += b;
      both += a && b;
    }
    const double pa = double(first) / samples, pb = double(second) / samples;
    const double pab = double(both) / samples;
    CHECK(std::abs(pa - rate) <= 3 * std::sqrt(rate * (1 - rate) / samples));
    const double se = std::sqrt(pab * (1 - pab) / samples);
    CHECK(std::abs(pab - pa * pb) <= 3 * se + 1e-12);
  }
}

TEST_CASE("noise after mutation is a rate-r mutation") {
  const int n = 100;
  const double chi = 1.0, q = 1.0;
  const double r = combined_rate({n, chi, q});
  CHECK(r == doctest::Approx(1.98).epsilon(1e-15));
  const auto x = BitString::with_distance(n, 50);
  RandomSource rng(23);
  std::vector<std::uint64_t> composed(n + 1, 0), direct(n + 1, 0);
  for (int i = 0; i < 1'000'000; ++i) {
    ++composed[distance_to_optimum(apply_prior_noise(standard_bit_mutation(x, chi, rng), q, rng))];
    ++direct[distance_to_optimum(standard_bit_mutation(x, r, rng))];
  }
  CHECK_FALSE(test_support::two_sample(composed, direct, 0.001).rejects());
}

TEST_CASE("philox known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(RandomSource::philox_block({0, 0, 0, 0}, {0, 0}) ==
        A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(RandomSource::philox_block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                   {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(RandomSource::philox_block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                   {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("random source determinism and ranges") {
  RandomSource a(99), b(99), c(100);
  bool any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a.next_u64();
    REQUIRE(va == b.next_u64());
    any_diff |= va != c.next_u64();
  }
  CHECK(any_diff);

  RandomSource rng(4);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(rng.uniform_below(7) < 7);
  }

  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 10000; ++i) seeds.insert(derive_seed(42, i));
  CHECK(seeds.size() == 10000);
  CHECK(derive_seed(42, 1u, 2u) == derive_seed(42, (std::uint64_t{1} << 32) | 2u));
}

TEST_CASE("operators are deterministic for a fixed seed") {
  auto draw = [](std::uint64_t seed) {
    RandomSource rng(seed);
    auto x = BitString::random(300, rng);
    x = standard_bit_mutation(x, 3.0, rng);
    x = apply_prior_noise(x, 2.0, rng);
    return x;
  };
  CHECK(draw(8) == draw(8));
  CHECK_FALSE(draw(8) == draw(9));
}
