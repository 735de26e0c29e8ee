#include "noisy_ea/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "noisy_ea/parallel.hpp"
#include "noisy_ea/statistics.hpp"

namespace noisy_ea {

std::string_view to_string(LambdaRule::Kind kind) noexcept {
  switch (kind) {
    case LambdaRule::Kind::fixed:
      return "fixed";
    case LambdaRule::Kind::ceil_c_ln_n:
      return "ceil_c_ln_n";
    case LambdaRule::Kind::floor_ln_n:
      return "floor_ln_n";
    case LambdaRule::Kind::floor_c_ln_n:
      return "floor_c_ln_n";
  }
  return "unknown";
}

LambdaRule::Kind parse_lambda_rule_kind(std::string_view text) {
  if (text == "fixed") return LambdaRule::Kind::fixed;
  if (text == "ceil_c_ln_n") return LambdaRule::Kind::ceil_c_ln_n;
  if (text == "floor_ln_n") return LambdaRule::Kind::floor_ln_n;
  if (text == "floor_c_ln_n") return LambdaRule::Kind::floor_c_ln_n;
  throw std::invalid_argument("unknown lambda rule '" + std::string(text) + "'");
}

int LambdaRule::lambda_for(int n) const {
  const double ln_n = std::log(static_cast<double>(n));
  double lambda = 1.0;
  switch (kind) {
    case Kind::fixed:
      lambda = value;
      break;
    case Kind::ceil_c_ln_n:
      lambda = std::ceil(value * ln_n);
      break;
    case Kind::floor_ln_n:
      lambda = std::floor(ln_n);
      break;
    case Kind::floor_c_ln_n:
      lambda = std::floor(value * ln_n);
      break;
  }
  return std::max(1, static_cast<int>(lambda));
}

void ExperimentSpec::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("experiment needs at least one algorithm");
  if (n_values.empty()) throw std::invalid_argument("experiment needs at least one n");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw std::invalid_argument("n values must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("n values must be strictly increasing");
    }
  }
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (lambda_rule.kind != LambdaRule::Kind::floor_ln_n && !(lambda_rule.value > 0.0)) {
    throw std::invalid_argument("lambda rule value must be positive");
  }
  for (Mode mode : algorithms) {
    for (int n : n_values) {
      AlgoConfig c{n, lambda_for(mode, n), chi, q, mode, budget, 0, false};
      c.validate();
    }
  }
}

std::uint64_t experiment_seed(std::uint64_t master_seed, std::size_t cell, std::size_t rep) {
  return derive_seed(master_seed, static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(rep));
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t sizes = spec.n_values.size();
  const std::size_t cells = spec.algorithms.size() * sizes;
  const auto reps = static_cast<std::size_t>(spec.repetitions);

  std::vector<RunRecord> records(cells * reps);
  // Largest problems first so long runs do not trail at the end.
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.n_values[(a / reps) % sizes] > spec.n_values[(b / reps) % sizes];
  });

  parallel_for(records.size(), [&](std::size_t job) {
    const std::size_t index = order[job];
    const std::size_t cell = index / reps;
    const std::size_t rep = index % reps;
    const Mode mode = spec.algorithms[cell / sizes];
    const int n = spec.n_values[cell % sizes];

    AlgoConfig config;
    config.n = n;
    config.lambda = spec.lambda_for(mode, n);
    config.chi = spec.chi;
    config.q = spec.q;
    config.mode = mode;
    config.budget = spec.budget;
    config.stop_rule = spec.stop_rule;
    config.seed = experiment_seed(spec.master_seed, cell, rep);
    const RunResult result = run(config);

    records[index] = {mode,          n,        config.lambda,
                      spec.chi,      spec.q,   config.seed,
                      result.success, result.evaluations_used, result.iterations};
  });
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize needs at least one record");
  using Key = std::tuple<int, int, int, double, double>;
  struct Cell {
    IntegerMoments successes;
    std::uint64_t count = 0;
    std::uint64_t failures = 0;
  };
  std::map<Key, Cell> cells;
  for (const auto& r : records) {
    auto& cell = cells[Key{static_cast<int>(r.mode), r.n, r.lambda, r.chi, r.q}];
    ++cell.count;
    if (r.success) {
      cell.successes.add(static_cast<std::int64_t>(r.evaluations));
    } else {
      ++cell.failures;
    }
  }

  std::vector<SummaryRow> rows;
  rows.reserve(cells.size());
  for (const auto& [key, cell] : cells) {
    SummaryRow row;
    row.mode = static_cast<Mode>(std::get<0>(key));
    row.n = std::get<1>(key);
    row.lambda = std::get<2>(key);
    row.chi = std::get<3>(key);
    row.q = std::get<4>(key);
    row.count = cell.count;
    row.failures = cell.failures;
    row.mean_evals = cell.successes.mean();
    row.std_evals = cell.successes.stddev();
    const double scale = row.n * std::log(static_cast<double>(row.n));
    row.mean_norm = row.mean_evals / scale;
    row.std_norm = row.std_evals / scale;
    row.flagged = cell.failures > 0 || cell.successes.count() < 2;
    rows.push_back(row);
  }
  return rows;
}

ExperimentSpec preset_fig2(bool full_grid) {
  ExperimentSpec spec;
  spec.algorithms = {Mode::plus, Mode::comma};
  for (int e = 6; e <= (full_grid ? 14 : 10); ++e) spec.n_values.push_back(1 << e);
  spec.chi = 1.0;
  spec.q = 1.0;
  spec.lambda_rule = LambdaRule::ceil_c_ln_n(14.0);
  spec.repetitions = 100;
  spec.master_seed = 2;
  spec.stop_rule = StopRule::accepted;
  return spec;
}

ExperimentSpec preset_fig3(bool full_grid) {
  ExperimentSpec spec;
  spec.algorithms = {Mode::plus, Mode::one_plus_one};
  for (int e = 6; e <= (full_grid ? 10 : 9); ++e) spec.n_values.push_back(1 << e);
  spec.chi = 1.0;
  spec.q = 0.01;
  spec.lambda_rule = LambdaRule::floor_ln_n();
  spec.repetitions = 100;
  spec.master_seed = 3;
  spec.stop_rule = StopRule::accepted;
  return spec;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace noisy_ea
