#include <benchmark/benchmark.h>

#include <vector>

#include "noisy_ea/algorithms.hpp"
#include "noisy_ea/drift.hpp"
#include "noisy_ea/operators.hpp"
#include "noisy_ea/random.hpp"

using namespace noisy_ea;

static void BM_RandomNext(benchmark::State& state) {
  RandomSource rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_RandomNext);

static void BM_Binomial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  BinomialSampler sampler(n, 1.0 / static_cast<double>(n));
  RandomSource rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_Binomial)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_FlipSampler(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  FlipSampler flips(n, 2.0 / static_cast<double>(n));
  RandomSource rng(3);
  std::vector<std::uint32_t> out;
  for (auto _ : state) {
    flips.sample(rng, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_FlipSampler)->Arg(64)->Arg(16384);

static void BM_Generation(benchmark::State& state) {
  AlgoConfig config;
  config.n = static_cast<int>(state.range(0));
  config.lambda = static_cast<int>(state.range(1));
  config.q = 1.0;
  IterationKernel kernel(config);
  RandomSource rng(4);
  auto parent = BitString::with_distance(static_cast<std::size_t>(config.n),
                                         static_cast<std::size_t>(config.n / 10));
  int fitness = onemax(parent);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.step(parent, fitness, rng));
    if (fitness == config.n) {
      parent = BitString::with_distance(static_cast<std::size_t>(config.n),
                                        static_cast<std::size_t>(config.n / 10));
      fitness = onemax(parent);
    }
  }
  state.SetItemsProcessed(state.iterations() * config.lambda);
}
BENCHMARK(BM_Generation)->Args({1024, 98})->Args({16384, 136});

static void BM_RunFig2Cell(benchmark::State& state) {
  AlgoConfig config;
  config.n = 256;
  config.lambda = 78;
  config.q = 1.0;
  config.mode = Mode::comma;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(run(config));
  }
}
BENCHMARK(BM_RunFig2Cell)->Unit(benchmark::kMillisecond);

static void BM_NegativeDriftEstimate(benchmark::State& state) {
  AlgoConfig config;
  config.n = 1000;
  config.lambda = 97;
  config.q = 1.0;
  RandomSource rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_noisy_winner_drift(500, config, 10000, rng));
}
BENCHMARK(BM_NegativeDriftEstimate)->Unit(benchmark::kMillisecond);

static void BM_GroupCountOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(drift_from_group_counts(1000, 97, 1.0, 1.0, 50));
}
BENCHMARK(BM_GroupCountOracle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
