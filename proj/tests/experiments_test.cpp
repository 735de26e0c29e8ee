#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "noisy_ea/experiments.hpp"

using namespace noisy_ea;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentSpec tiny_spec() {
  ExperimentSpec spec;
  spec.algorithms = {Mode::comma};
  spec.n_values = {12};
  spec.q = 1.0;
  spec.lambda_rule = LambdaRule::fixed(4);
  spec.repetitions = 3;
  spec.master_seed = 9;
  return spec;
}

RunRecord record(std::uint64_t evals, bool success = true) {
  RunRecord r;
  r.mode = Mode::plus;
  r.n = 10;
  r.lambda = 2;
  r.chi = 1.0;
  r.q = 1.0;
  r.success = success;
  r.evaluations = evals;
  return r;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "noisy_ea_experiments_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("lambda rules") {
  CHECK(LambdaRule::fixed(7).lambda_for(1000) == 7);
  CHECK(LambdaRule::ceil_c_ln_n(14).lambda_for(64) == 59);
  CHECK(LambdaRule::floor_c_ln_n(14).lambda_for(64) == 58);
  CHECK(LambdaRule::floor_ln_n().lambda_for(64) == 4);
  CHECK(LambdaRule::floor_ln_n().lambda_for(2) == 1);
  CHECK(parse_lambda_rule_kind("floor_ln_n") == LambdaRule::Kind::floor_ln_n);
  CHECK_THROWS_AS(parse_lambda_rule_kind("sqrt"), std::invalid_argument);
}

TEST_CASE("presets") {
  const auto fig2 = preset_fig2();
  CHECK(fig2.lambda_for(Mode::plus, 64) == 59);
  CHECK(fig2.n_values == std::vector<int>{64, 128, 256, 512, 1024});
  CHECK(preset_fig2(true).n_values.back() == 16384);
  CHECK(fig2.q == 1.0);
  const auto fig3 = preset_fig3();
  CHECK(fig3.lambda_for(Mode::plus, 64) == 4);
  CHECK(fig3.lambda_for(Mode::one_plus_one, 64) == 1);
  CHECK(std::count(fig3.algorithms.begin(), fig3.algorithms.end(), Mode::one_plus_one) == 1);
  CHECK(fig3.n_values.back() == 512);
  CHECK(preset_fig3(true).n_values.back() == 1024);
  CHECK(fig3.q == 0.01);
}

TEST_CASE("spec validation") {
  auto spec = tiny_spec();
  spec.n_values = {16, 8};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = tiny_spec();
  spec.repetitions = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = tiny_spec();
  spec.algorithms.clear();
  CHECK_THROWS_AS(run_experiment(spec), std::invalid_argument);
  spec = tiny_spec();
  spec.q = 50.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("one record per run in canonical order") {
  auto records = run_experiment(tiny_spec());
  CHECK(records.size() == 3);
  for (const auto& r : records) {
    CHECK(r.mode == Mode::comma);
    CHECK(r.n == 12);
    CHECK(r.lambda == 4);
    CHECK(r.evaluations == 1 + 4 * r.iterations);
  }
  CHECK(records == run_experiment(tiny_spec()));
  CHECK(records[1].seed == experiment_seed(9, 0, 1));

  ExperimentSpec grid = tiny_spec();
  grid.algorithms = {Mode::plus, Mode::comma};
  grid.n_values = {6, 9, 12};
  const auto many = run_experiment(grid);
  REQUIRE(many.size() == 18);
  CHECK(many[0].mode == Mode::plus);
  CHECK(many[3].n == 9);
  CHECK(many[9].mode == Mode::comma);
  for (const auto& r : many) {
    const std::uint64_t per = r.mode == Mode::comma ? r.lambda : r.lambda + 1;
    CHECK(r.evaluations == 1 + per * r.iterations);
  }
}

TEST_CASE("experiment seeds are injective over cells and repetitions") {
  std::set<std::uint64_t> seeds;
  for (std::size_t cell = 0; cell < 40; ++cell) {
    for (std::size_t rep = 0; rep < 500; ++rep) seeds.insert(experiment_seed(123, cell, rep));
  }
  CHECK(seeds.size() == 40 * 500);
}

TEST_CASE("summary statistics") {
  const auto rows = summarize({record(10), record(20)});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].count == 2);
  CHECK(rows[0].mean_evals == 15.0);
  CHECK(rows[0].std_evals == doctest::Approx(7.0710678118654755).epsilon(1e-15));
  CHECK_FALSE(rows[0].flagged);

  const auto single = summarize({record(42)});
  CHECK(single[0].mean_evals == 42.0);
  CHECK(single[0].std_evals == 0.0);
  CHECK(single[0].flagged);

  const auto failed = summarize({record(10), record(20), record(99, false)});
  CHECK(failed[0].count == 3);
  CHECK(failed[0].failures == 1);
  CHECK(failed[0].mean_evals == 15.0);
  CHECK(failed[0].flagged);

  CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("summarize is permutation invariant and normalizes by n ln n") {
  ExperimentSpec spec = tiny_spec();
  spec.algorithms = {Mode::plus, Mode::comma};
  spec.n_values = {8, 16, 32};
  spec.repetitions = 7;
  auto records = run_experiment(spec);
  const auto base = summarize(records);
  std::mt19937 shuffle_rng(4);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(records.begin(), records.end(), shuffle_rng);
    const auto again = summarize(records);
    REQUIRE(again.size() == base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(again[k].mean_evals == base[k].mean_evals);
      CHECK(again[k].std_evals == base[k].std_evals);
      CHECK(again[k].n == base[k].n);
    }
  }
  for (const auto& row : base) {
    const double scale = row.n * std::log(double(row.n));
    CHECK(std::abs(row.mean_norm * scale - row.mean_evals) <= 1e-12 * row.mean_evals);
  }
}

TEST_CASE("CSV writing and round trip") {
  std::ostringstream empty;
  write_csv(empty, std::vector<RunRecord>{});
  CHECK(empty.str() == std::string(kRecordsCsvHeader) + "\n");
  std::ostringstream empty_summary;
  write_csv(empty_summary, std::vector<SummaryRow>{});
  CHECK(empty_summary.str() == std::string(kSummaryCsvHeader) + "\n");

  ExperimentSpec spec = tiny_spec();
  spec.q = 0.3;
  spec.chi = 1.1;
  const auto records = run_experiment(spec);
  const auto path = temp_dir() / "records.csv";
  export_csv(records, path);
  CHECK(import_records_csv(path) == records);

  std::istringstream bad("mode,n\nplus,3\n");
  CHECK_THROWS_AS(read_records_csv(bad), std::runtime_error);
  std::istringstream short_row(std::string(kRecordsCsvHeader) + "\nplus,3\n");
  CHECK_THROWS_AS(read_records_csv(short_row), std::runtime_error);
  CHECK_THROWS_AS(import_records_csv(temp_dir() / "missing.csv"), std::runtime_error);
  CHECK_THROWS_AS(export_csv(records, temp_dir() / "no_such_dir" / "x.csv"), std::runtime_error);
}

TEST_CASE("golden output for a frozen spec") {
  const std::filesystem::path golden(NOISY_EA_GOLDEN_DIR);
  const auto spec = load_experiment_spec(golden / "tiny_spec.json");
  const auto records = run_experiment(spec);
  std::ostringstream csv, summary;
  write_csv(csv, records);
  write_csv(summary, summarize(records));
  CHECK(csv.str() == slurp(golden / "tiny_records.csv"));
  CHECK(summary.str() == slurp(golden / "tiny_summary.csv"));
}

TEST_CASE("JSON experiment specs") {
  const auto spec = parse_experiment_spec(R"({
    "algorithms": ["plus", "1p1"],
    "n_values": [16, 32],
    "chi": 1.0,
    "q": 0.01,
    "lambda_rule": {"type": "floor_ln_n"},
    "repetitions": 5,
    "master_seed": 3,
    "stop_rule": "accepted"
  })");
  CHECK(spec.algorithms == std::vector<Mode>{Mode::plus, Mode::one_plus_one});
  CHECK(spec.n_values == std::vector<int>{16, 32});
  CHECK(spec.q == 0.01);
  CHECK(spec.lambda_rule.kind == LambdaRule::Kind::floor_ln_n);
  CHECK(spec.repetitions == 5);
  CHECK(spec.master_seed == 3);
  CHECK(spec.budget == 1'000'000'000);
  CHECK(spec.stop_rule == StopRule::accepted);

  const auto again = parse_experiment_spec(experiment_spec_to_json(spec));
  CHECK(again.algorithms == spec.algorithms);
  CHECK(again.n_values == spec.n_values);
  CHECK(again.q == spec.q);
  CHECK(again.stop_rule == spec.stop_rule);
  CHECK(again.lambda_rule.kind == spec.lambda_rule.kind);

  CHECK_THROWS_AS(parse_experiment_spec("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"algorithms":["plus"],"n_values":[8],
    "lambda_rule":{"type":"fixed","value":2},"repetitions":1,"colour":"red"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"algorithms":["plus"],"n_values":[8],
    "lambda_rule":{"type":"fixed","value":2}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"algorithms":["plus"],"n_values":"8",
    "lambda_rule":{"type":"fixed","value":2},"repetitions":1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_experiment_spec(temp_dir() / "missing.json"), std::runtime_error);
}

TEST_CASE("JSON output") {
  std::ostringstream out;
  write_json(out, std::vector<RunRecord>{record(10)});
  CHECK(out.str().find("\"evaluations\": 10") != std::string::npos);
  CHECK(out.str().find("\"mode\": \"plus\"") != std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
