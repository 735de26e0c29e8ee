#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "noisy_ea/algorithms.hpp"

namespace noisy_ea {

/// How λ is chosen for a problem size n.
struct LambdaRule {
  enum class Kind { fixed, ceil_c_ln_n, floor_ln_n, floor_c_ln_n };

  Kind kind = Kind::fixed;
  double value = 1.0;  // λ for fixed, C for the *_c_ln_n rules, unused for floor_ln_n

  static LambdaRule fixed(int lambda) { return {Kind::fixed, static_cast<double>(lambda)}; }
  static LambdaRule ceil_c_ln_n(double c) { return {Kind::ceil_c_ln_n, c}; }
  static LambdaRule floor_ln_n() { return {Kind::floor_ln_n, 1.0}; }
  static LambdaRule floor_c_ln_n(double c) { return {Kind::floor_c_ln_n, c}; }

  /// λ for problem size n, never below 1.
  int lambda_for(int n) const;
};

std::string_view to_string(LambdaRule::Kind kind) noexcept;
LambdaRule::Kind parse_lambda_rule_kind(std::string_view text);

/// A grid of runs: every algorithm on every problem size, `repetitions` times.
/// The λ rule applies to plus and comma; one_plus_one always uses λ = 1.
struct ExperimentSpec {
  std::vector<Mode> algorithms;
  std::vector<int> n_values;
  double chi = 1.0;
  double q = 0.0;
  LambdaRule lambda_rule;
  int repetitions = 100;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = 1'000'000'000;
  StopRule stop_rule = StopRule::sampled;

  void validate() const;
  int lambda_for(Mode mode, int n) const {
    return mode == Mode::one_plus_one ? 1 : lambda_rule.lambda_for(n);
  }
};

struct RunRecord {
  Mode mode = Mode::plus;
  int n = 0;
  int lambda = 1;
  double chi = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  bool success = false;
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SummaryRow {
  Mode mode = Mode::plus;
  int n = 0;
  int lambda = 1;
  double chi = 0.0;
  double q = 0.0;
  std::uint64_t count = 0;
  double mean_evals = 0.0;
  double std_evals = 0.0;
  double mean_norm = 0.0;  // mean_evals / (n ln n)
  double std_norm = 0.0;
  std::uint64_t failures = 0;
  // Set when the statistics are incomplete: failures were excluded from the
  // means, or count < 2 leaves the deviation undefined (reported as 0).
  bool flagged = false;
};

/// Seed of repetition `rep` in grid cell `cell` (cells enumerate algorithms
/// outer, problem sizes inner).
std::uint64_t experiment_seed(std::uint64_t master_seed, std::size_t cell, std::size_t rep);

/// One record per (mode, n, repetition) in that canonical order. Runs may be
/// executed concurrently; the output does not depend on scheduling.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec);

/// Per-cell statistics, sorted by (mode, n, λ, chi, q). Means and deviations
/// cover successful runs only; cells with failures are flagged.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

/// Runtime (1,λ)/(1+λ) grid with q = 1, chi = 1, λ = ceil(14 ln n).
/// Sizes 2^6..2^10, or 2^6..2^14 with `full_grid`. Both presets stop when the
/// optimum becomes the current individual.
ExperimentSpec preset_fig2(bool full_grid = false);

/// (1+λ) EA with λ = floor(ln n) against the (1+1) EA, q = 0.01, chi = 1.
/// Sizes 2^6..2^9, or 2^6..2^10 with `full_grid`.
ExperimentSpec preset_fig3(bool full_grid = false);

// --- serialization -----------------------------------------------------------

inline constexpr std::string_view kRecordsCsvHeader =
    "mode,n,lambda,chi,q,seed,success,evaluations,iterations";
inline constexpr std::string_view kSummaryCsvHeader =
    "mode,n,lambda,chi,q,count,mean_evals,std_evals,mean_norm,std_norm,failures";

/// printf("%.17g") rendering; round-trips every double exactly.
std::string format_double(double value);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_json(std::ostream& out, const std::vector<RunRecord>& records);
void write_json(std::ostream& out, const std::vector<SummaryRow>& rows);

/// File variants; I/O failures throw std::runtime_error naming the path.
void export_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);
void export_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);
void export_json(const std::vector<RunRecord>& records, const std::filesystem::path& path);
void export_json(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

std::vector<RunRecord> read_records_csv(std::istream& in);
std::vector<RunRecord> import_records_csv(const std::filesystem::path& path);

/// Experiment spec documents use the ExperimentSpec field names; lambda_rule
/// is {"type": "fixed"|"ceil_c_ln_n"|"floor_ln_n"|"floor_c_ln_n", "value": number}.
/// The optional "stop_rule" key takes "sampled" (default) or "accepted".
ExperimentSpec parse_experiment_spec(std::string_view json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
std::string experiment_spec_to_json(const ExperimentSpec& spec);

}  // namespace noisy_ea
