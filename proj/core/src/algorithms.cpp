#include "noisy_ea/algorithms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "noisy_ea/parallel.hpp"

namespace noisy_ea {

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::plus:
      return "plus";
    case Mode::comma:
      return "comma";
    case Mode::one_plus_one:
      return "one_plus_one";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "plus") return Mode::plus;
  if (text == "comma") return Mode::comma;
  if (text == "one_plus_one" || text == "1p1") return Mode::one_plus_one;
  throw std::invalid_argument("unknown mode '" + std::string(text) +
                              "' (expected plus, comma, one_plus_one or 1p1)");
}

std::string_view to_string(StopRule rule) noexcept {
  return rule == StopRule::sampled ? "sampled" : "accepted";
}

StopRule parse_stop_rule(std::string_view text) {
  if (text == "sampled") return StopRule::sampled;
  if (text == "accepted") return StopRule::accepted;
  throw std::invalid_argument("unknown stop rule '" + std::string(text) +
                              "' (expected sampled or accepted)");
}

void AlgoConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (mode == Mode::one_plus_one && lambda != 1) {
    throw std::invalid_argument("one_plus_one mode requires lambda = 1");
  }
  validate_mutation_strength(chi, static_cast<std::size_t>(n));
  validate_noise_strength(q, static_cast<std::size_t>(n));
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
}

std::size_t select_winner(std::span<const int> noisy_values, RandomSource& rng) {
  if (noisy_values.empty()) throw std::invalid_argument("select_winner on empty population");
  const int best = *std::max_element(noisy_values.begin(), noisy_values.end());
  const auto ties = static_cast<std::uint64_t>(
      std::count(noisy_values.begin(), noisy_values.end(), best));
  std::uint64_t pick = ties > 1 ? rng.uniform_below(ties) : 0;
  for (std::size_t i = 0; i < noisy_values.size(); ++i) {
    if (noisy_values[i] == best && pick-- == 0) return i;
  }
  return 0;  // unreachable
}

IterationKernel::IterationKernel(const AlgoConfig& config) : config_(config) {
  config_.validate();
  const auto n = static_cast<std::size_t>(config_.n);
  mutation_ = FlipSampler(n, config_.chi / config_.n);
  noise_ = FlipSampler(n, config_.q / config_.n);
  offsets_.resize(static_cast<std::size_t>(config_.lambda) + 1);
  true_fitness_.resize(static_cast<std::size_t>(config_.lambda));
  noisy_fitness_.resize(static_cast<std::size_t>(config_.lambda));
}

IterationOutcome IterationKernel::step(BitString& parent, int& parent_fitness,
                                       RandomSource& rng) {
  const auto lambda = static_cast<std::size_t>(config_.lambda);
  IterationOutcome out;
  flips_.clear();
  std::vector<std::uint32_t>& mut = noise_scratch_;

  // Offspring are kept as flip lists against the parent; only the accepted
  // winner is materialized.
  for (std::size_t i = 0; i < lambda; ++i) {
    offsets_[i] = flips_.size();
    mutation_.sample(rng, mut);
    int fitness = parent_fitness;
    for (auto p : mut) fitness += parent.get(p) ? -1 : 1;
    flips_.insert(flips_.end(), mut.begin(), mut.end());
    const auto first = flips_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);

    noise_.sample(rng, mut);
    int noisy = fitness;
    for (auto p : mut) {
      const bool flipped = std::find(first, flips_.end(), p) != flips_.end();
      noisy += (parent.get(p) != flipped) ? -1 : 1;
    }
    true_fitness_[i] = fitness;
    noisy_fitness_[i] = noisy;
    if (fitness == config_.n) out.optimum_sampled = true;
  }
  offsets_[lambda] = flips_.size();

  out.winner = select_winner(noisy_fitness_, rng);
  out.winner_true_fitness = true_fitness_[out.winner];
  out.winner_noisy_fitness = noisy_fitness_[out.winner];

  if (config_.elitist()) {
    out.parent_noisy_fitness = noisy_fitness(parent, parent_fitness, noise_, rng, mut);
    out.accepted = out.winner_noisy_fitness >= *out.parent_noisy_fitness;
  } else {
    out.accepted = true;
  }

  if (out.accepted) {
    const auto begin = flips_.begin() + static_cast<std::ptrdiff_t>(offsets_[out.winner]);
    const auto end = flips_.begin() + static_cast<std::ptrdiff_t>(offsets_[out.winner + 1]);
    for (auto it = begin; it != end; ++it) parent.flip(*it);
    parent_fitness = out.winner_true_fitness;
  }
  return out;
}

RunResult run(const AlgoConfig& config) {
  IterationKernel kernel(config);
  RandomSource rng(config.seed);
  const auto n = static_cast<std::size_t>(config.n);

  BitString x = BitString::random(n, rng);
  int fitness = onemax(x);
  // Initial evaluation; its noisy value is never used by any selection rule.
  (void)noisy_fitness(x, config.q, rng);

  RunResult result;
  result.evaluations_used = 1;
  if (config.record_trajectory) result.trajectory.push_back({0, config.n - fitness});
  if (fitness == config.n) {
    result.success = true;
    return result;
  }

  const std::uint64_t cost = config.evaluations_per_iteration();
  // evaluations_used <= budget holds throughout; generations are atomic.
  while (config.budget - result.evaluations_used >= cost) {
    const int before = fitness;
    const IterationOutcome outcome = kernel.step(x, fitness, rng);
    result.evaluations_used += cost;
    ++result.iterations;
    if (config.record_trajectory && fitness != before) {
      result.trajectory.push_back({result.iterations, config.n - fitness});
    }
    const bool solved = config.stop_rule == StopRule::sampled ? outcome.optimum_sampled
                                                              : fitness == config.n;
    if (solved) {
      result.success = true;
      return result;
    }
  }
  return result;
}

std::vector<RunResult> run_many(const AlgoConfig& config, std::size_t repetitions,
                                std::uint64_t master_seed) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  config.validate();
  std::vector<RunResult> results(repetitions);
  parallel_for(repetitions, [&](std::size_t i) {
    AlgoConfig c = config;
    c.seed = derive_seed(master_seed, i);
    results[i] = run(c);
  });
  return results;
}

}  // namespace noisy_ea
