#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "noisy_ea/bitstring.hpp"
#include "noisy_ea/operators.hpp"
#include "noisy_ea/random.hpp"

namespace noisy_ea {

enum class Mode { plus, comma, one_plus_one };

/// When a run counts as solved.
enum class StopRule {
  sampled,   // some evaluated individual (initial or true offspring) is optimal
  accepted,  // the current individual is optimal
};

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(StopRule rule) noexcept;
StopRule parse_stop_rule(std::string_view text);
/// Accepts "plus", "comma", "one_plus_one" and the short form "1p1".
Mode parse_mode(std::string_view text);

/// Parameters of a single run of the (1+λ), (1,λ) or (1+1) EA on noisy OneMax.
struct AlgoConfig {
  int n = 0;
  int lambda = 1;
  double chi = 1.0;  // mutation rate chi/n
  double q = 0.0;    // noise rate q/n
  Mode mode = Mode::plus;
  std::uint64_t budget = 1'000'000'000;  // fitness evaluations
  std::uint64_t seed = 0;
  bool record_trajectory = false;
  StopRule stop_rule = StopRule::sampled;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  bool elitist() const noexcept { return mode != Mode::comma; }

  /// λ for comma selection, λ + 1 (parent re-evaluation) otherwise.
  std::uint64_t evaluations_per_iteration() const noexcept {
    return static_cast<std::uint64_t>(lambda) + (elitist() ? 1 : 0);
  }
};

struct TrajectoryPoint {
  std::uint64_t iteration = 0;
  int distance = 0;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct RunResult {
  bool success = false;
  std::uint64_t evaluations_used = 0;
  std::uint64_t iterations = 0;
  // Distance of the current individual, stored only when it changes.
  std::vector<TrajectoryPoint> trajectory;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Index of a maximal value; ties are broken uniformly at random. Draws from
/// `rng` only when there is more than one maximum.
std::size_t select_winner(std::span<const int> noisy_values, RandomSource& rng);

struct IterationOutcome {
  std::size_t winner = 0;
  int winner_noisy_fitness = 0;
  int winner_true_fitness = 0;
  std::optional<int> parent_noisy_fitness;  // set for elitist modes only
  bool accepted = false;
  bool optimum_sampled = false;  // some true (pre-noise) offspring is optimal
};

/// One generation: λ mutants, fresh noise on each, noisy selection of the
/// mutation winner, and (for elitist modes) a noisy duel against the freshly
/// re-evaluated parent. Holds reusable buffers; not thread-safe.
class IterationKernel {
 public:
  explicit IterationKernel(const AlgoConfig& config);

  const AlgoConfig& config() const noexcept { return config_; }

  /// Advances `parent` (whose true OneMax value is `parent_fitness`) by one
  /// generation, replacing both when the winner is accepted.
  IterationOutcome step(BitString& parent, int& parent_fitness, RandomSource& rng);

 private:
  AlgoConfig config_;
  FlipSampler mutation_;
  FlipSampler noise_;
  std::vector<std::uint32_t> flips_;          // all offspring, concatenated
  std::vector<std::size_t> offsets_;          // λ + 1 entries into flips_
  std::vector<int> true_fitness_;
  std::vector<int> noisy_fitness_;
  std::vector<std::uint32_t> noise_scratch_;
};

/// Runs until a true optimum is sampled or the next generation would exceed
/// the evaluation budget. The initial individual costs one evaluation.
RunResult run(const AlgoConfig& config);

/// `repetitions` runs; run i uses seed derive_seed(master_seed, i). Results are
/// ordered by i regardless of how runs are scheduled.
std::vector<RunResult> run_many(const AlgoConfig& config, std::size_t repetitions,
                                std::uint64_t master_seed);

}  // namespace noisy_ea
