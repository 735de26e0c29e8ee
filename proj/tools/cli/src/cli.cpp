#include "noisy_ea_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "noisy_ea/algorithms.hpp"
#include "noisy_ea/bit_probabilities.hpp"
#include "noisy_ea/bounds.hpp"
#include "noisy_ea/drift.hpp"
#include "noisy_ea/experiments.hpp"
#include "noisy_ea_cli/svg_plot.hpp"

namespace noisy_ea::cli {

namespace {

// Usage problems detected after parsing (bad ranges, missing files, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Flat JSON object writer with %.17g numbers.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double v) { return raw(key, format_double(v)); }
  JsonObject& add(const std::string& key, std::uint64_t v) { return raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, int v) { return raw(key, std::to_string(v)); }
  JsonObject& add(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonObject& add(const std::string& key, std::string_view v) {
    return raw(key, "\"" + std::string(v) + "\"");
  }
  JsonObject& raw(const std::string& key, const std::string& json) {
    body_ += (body_.empty() ? "" : ",") + ("\"" + key + "\":") + json;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

std::string estimate_json(const Estimate& e) {
  return JsonObject().add("value", e.value).add("standard_error", e.standard_error).str();
}

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// --- run ---------------------------------------------------------------------

struct RunFlags {
  int n = 0;
  int lambda = 1;
  double chi = 1.0;
  double q = 0.0;
  std::string mode = "plus";
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000'000;
  bool trajectory = false;
  std::string format = "json";
  std::string stop_rule = "sampled";
};

int do_run(const RunFlags& f, std::ostream& out) {
  AlgoConfig config;
  config.n = f.n;
  config.lambda = f.lambda;
  config.chi = f.chi;
  config.q = f.q;
  config.mode = parse_mode(f.mode);
  config.seed = f.seed;
  config.budget = f.budget;
  config.record_trajectory = f.trajectory;
  config.stop_rule = parse_stop_rule(f.stop_rule);
  config.validate();
  const RunResult result = run(config);

  if (f.format == "json") {
    JsonObject doc;
    doc.add("mode", to_string(config.mode))
        .add("n", config.n)
        .add("lambda", config.lambda)
        .add("chi", config.chi)
        .add("q", config.q)
        .add("seed", config.seed)
        .add("budget", config.budget)
        .add("stop_rule", to_string(config.stop_rule))
        .add("success", result.success)
        .add("evaluations", result.evaluations_used)
        .add("iterations", result.iterations);
    if (f.trajectory) {
      std::string points = "[";
      for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
        points += (i ? "," : "") + std::string("[") +
                  std::to_string(result.trajectory[i].iteration) + "," +
                  std::to_string(result.trajectory[i].distance) + "]";
      }
      doc.raw("trajectory", points + "]");
    }
    out << doc.str() << '\n';
  } else {
    out << "success " << (result.success ? "true" : "false") << '\n'
        << "evaluations " << result.evaluations_used << '\n'
        << "iterations " << result.iterations << '\n';
    if (f.trajectory) {
      out << "trajectory (iteration distance)\n";
      for (const auto& p : result.trajectory) out << p.iteration << ' ' << p.distance << '\n';
    }
  }
  return result.success ? kExitOk : kExitBudget;
}

// --- experiment ----------------------------------------------------------------

struct ExperimentFlags {
  std::string spec;
  std::string preset;
  std::string out;
  bool full_grid = false;
  bool lambda_floor = false;
  std::optional<int> repetitions;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> stop_rule;
};

int do_experiment(const ExperimentFlags& f, std::ostream& out, std::ostream& err) {
  if (f.spec.empty() == f.preset.empty()) {
    throw UsageError("experiment needs exactly one of --spec or --preset");
  }
  ExperimentSpec spec;
  if (!f.preset.empty()) {
    if (f.preset == "fig2") {
      spec = preset_fig2(f.full_grid);
    } else if (f.preset == "fig3") {
      spec = preset_fig3(f.full_grid);
    } else {
      throw UsageError("unknown preset '" + f.preset + "' (expected fig2 or fig3)");
    }
  } else {
    if (f.full_grid) throw UsageError("--full-grid applies to presets only");
    spec = load_experiment_spec(f.spec);
  }
  if (f.lambda_floor) {
    if (spec.lambda_rule.kind != LambdaRule::Kind::ceil_c_ln_n) {
      throw UsageError("--lambda-floor needs a ceil_c_ln_n lambda rule");
    }
    spec.lambda_rule.kind = LambdaRule::Kind::floor_c_ln_n;
  }
  if (f.repetitions) spec.repetitions = *f.repetitions;
  if (f.seed) spec.master_seed = *f.seed;
  if (f.stop_rule) spec.stop_rule = parse_stop_rule(*f.stop_rule);
  spec.validate();

  const std::filesystem::path dir(f.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + f.out + "': " + ec.message());

  const auto records = run_experiment(spec);
  const auto summary = summarize(records);
  export_csv(records, dir / "records.csv");
  export_csv(summary, dir / "summary.csv");

  Table table({"mode", "n", "lambda", "runs", "mean_evals", "std_evals", "mean_norm",
               "std_norm", "failures"});
  std::uint64_t failures = 0;
  for (const auto& row : summary) {
    table.row({std::string(to_string(row.mode)), std::to_string(row.n),
               std::to_string(row.lambda), std::to_string(row.count), human(row.mean_evals),
               human(row.std_evals), human(row.mean_norm), human(row.std_norm),
               std::to_string(row.failures)});
    failures += row.failures;
  }
  table.print(out);
  if (failures > 0) {
    err << failures << " run(s) exhausted the evaluation budget\n";
    return kExitBudget;
  }
  return kExitOk;
}

// --- drift -------------------------------------------------------------------

struct DriftFlags {
  int n = 0;
  int lambda = 1;
  double chi = 1.0;
  double q = 0.0;
  int d = 0;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  bool oracle = false;
  std::string format = "text";
};

int do_drift(const DriftFlags& f, std::ostream& out) {
  AlgoConfig config;
  config.n = f.n;
  config.lambda = f.lambda;
  config.chi = f.chi;
  config.q = f.q;
  config.validate();
  if (f.d < 1 || f.d > f.n) throw UsageError("--d must lie in [1, n]");
  if (f.oracle && (f.n > 6 || f.lambda > 3)) {
    throw UsageError("the exhaustive oracle is limited to n <= 6 and lambda <= 3");
  }

  RandomSource rng(f.seed);
  const DriftEstimate winner = estimate_noisy_winner_drift(f.d, config, f.samples, rng);
  const DriftEstimate selection = estimate_selection_drift(f.d, config, f.samples, rng);
  std::optional<DriftEstimate> exact;
  if (f.oracle) exact = exhaustive_drift_oracle(f.n, f.lambda, f.chi, f.q, f.d);

  struct Row {
    const char* name;
    Estimate estimate;
    double exact;
  };
  const std::vector<Row> rows = {
      {"delta_plus", winner.delta_plus, exact ? exact->delta_plus.value : 0.0},
      {"delta_minus", winner.delta_minus, exact ? exact->delta_minus.value : 0.0},
      {"delta_com", *selection.delta_com, exact ? exact->delta_com->value : 0.0},
      {"delta_plus_sel", *selection.delta_plus_sel, exact ? exact->delta_plus_sel->value : 0.0},
  };

  if (f.format == "json") {
    JsonObject doc;
    doc.add("n", f.n).add("lambda", f.lambda).add("chi", f.chi).add("q", f.q).add("d", f.d);
    doc.add("samples", f.samples).add("seed", f.seed);
    for (const auto& r : rows) doc.raw(r.name, estimate_json(r.estimate));
    if (exact) {
      JsonObject o;
      for (const auto& r : rows) o.add(r.name, r.exact);
      doc.raw("oracle", o.str());
    }
    out << doc.str() << '\n';
    return kExitOk;
  }
  std::vector<std::string> header = {"quantity", "estimate", "se"};
  if (exact) {
    header.push_back("oracle");
    header.push_back("z");
  }
  Table table(header);
  for (const auto& r : rows) {
    std::vector<std::string> cells = {r.name, human(r.estimate.value),
                                      human(r.estimate.standard_error)};
    if (exact) {
      cells.push_back(human(r.exact));
      const double se = r.estimate.standard_error;
      cells.push_back(se > 0 ? human((r.estimate.value - r.exact) / se) : "-");
    }
    table.row(cells);
  }
  out << "n=" << f.n << " lambda=" << f.lambda << " chi=" << human(f.chi) << " q=" << human(f.q)
      << " d=" << f.d << " samples=" << f.samples << '\n';
  table.print(out);
  return kExitOk;
}

// --- probs -------------------------------------------------------------------

struct ProbsFlags {
  int n = 0;
  double chi = 1.0;
  double q = 0.0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::string format = "text";
};

int do_probs(const ProbsFlags& f, std::ostream& out) {
  const NoiseMutationParams params{f.n, f.chi, f.q};
  params.validate();
  const ConditionalBitProbs exact = conditional_bit_probabilities(params);
  RandomSource rng(f.seed);
  const ConditionalBitEstimate est = estimate_conditional_bit_probabilities(params, f.samples, rng);

  struct Row {
    const char* name;
    double exact, value, se;
  };
  const std::vector<Row> rows = {
      {"p_same_given_same", exact.p_same_given_same, est.probs.p_same_given_same,
       est.standard_errors.p_same_given_same},
      {"p_same_given_diff", exact.p_same_given_diff, est.probs.p_same_given_diff,
       est.standard_errors.p_same_given_diff},
      {"p_diff_given_same", exact.p_diff_given_same, est.probs.p_diff_given_same,
       est.standard_errors.p_diff_given_same},
      {"p_diff_given_diff", exact.p_diff_given_diff, est.probs.p_diff_given_diff,
       est.standard_errors.p_diff_given_diff},
  };
  if (f.format == "json") {
    JsonObject doc;
    doc.add("n", f.n).add("chi", f.chi).add("q", f.q).add("samples", f.samples);
    doc.add("r", combined_rate(params));
    for (const auto& r : rows) {
      doc.raw(r.name, JsonObject()
                          .add("exact", r.exact)
                          .add("estimate", r.value)
                          .add("standard_error", r.se)
                          .str());
    }
    doc.add("same_events", est.same_events).add("diff_events", est.diff_events);
    out << doc.str() << '\n';
    return kExitOk;
  }
  out << "n=" << f.n << " chi=" << human(f.chi) << " q=" << human(f.q)
      << " r=" << human(combined_rate(params)) << " samples=" << f.samples << '\n';
  Table table({"probability", "exact", "estimate", "se"});
  for (const auto& r : rows) table.row({r.name, human(r.exact), human(r.value), human(r.se)});
  table.print(out);
  if (est.same_unreliable || est.diff_unreliable) {
    out << "warning: a conditioning event occurred fewer than 100 times\n";
  }
  return kExitOk;
}

// --- bounds ------------------------------------------------------------------

struct BoundsFlags {
  int n = 0;
  int lambda = 3;
  double chi = 1.0;
  double q = 0.0;
  std::optional<int> d0;
  std::string format = "text";
};

int do_bounds(const BoundsFlags& f, std::ostream& out) {
  const NoiseMutationParams params{f.n, f.chi, f.q};
  params.validate();
  if (f.lambda < 3) throw UsageError("bounds need --lambda >= 3");
  const int d0 = f.d0.value_or(f.n);
  if (d0 < 1 || d0 > f.n) throw UsageError("--d0 must lie in [1, n]");

  const double r = combined_rate(params);
  const auto c = lambda_threshold(r);
  const RuntimeBounds b = runtime_bounds(f.n, f.lambda, f.chi, f.q, d0);

  std::vector<int> grid;
  for (int d = 1; d < f.n; d *= 2) grid.push_back(d);
  grid.push_back(f.n);

  if (f.format == "json") {
    JsonObject doc;
    doc.add("n", f.n).add("lambda", f.lambda).add("chi", f.chi).add("q", f.q).add("d0", d0);
    doc.add("r", r).add("C", static_cast<std::uint64_t>(c)).add("h_minus", h_minus(f.n));
    std::string h = "[";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      h += (i ? "," : "") +
           JsonObject().add("d", grid[i]).add("h_plus", h_plus(grid[i], f.lambda, r, f.n)).str();
    }
    doc.raw("h_plus", h + "]");
    doc.add("iterations_comma", b.iterations_comma)
        .add("iterations_plus", b.iterations_plus)
        .add("evaluations_comma", b.evaluations_comma)
        .add("evaluations_plus", b.evaluations_plus);
    out << doc.str() << '\n';
    return kExitOk;
  }
  out << "r=" << human(r) << '\n'
      << "C=" << c << '\n'
      << "C*ln(n)=" << human(static_cast<double>(c) * std::log(f.n)) << '\n'
      << "h_minus=" << human(h_minus(f.n)) << '\n';
  Table table({"d", "h_plus"});
  for (int d : grid) table.row({std::to_string(d), human(h_plus(d, f.lambda, r, f.n))});
  table.print(out);
  Table totals({"selection", "iterations", "evaluations"});
  totals.row({"comma", human(b.iterations_comma), human(b.evaluations_comma)});
  totals.row({"plus", human(b.iterations_plus), human(b.evaluations_plus)});
  out << "runtime bounds from d0=" << d0 << '\n';
  totals.print(out);
  return kExitOk;
}

// --- plot --------------------------------------------------------------------

int do_plot(const PlotSpec& spec, std::optional<int> log_x_base, std::ostream& out) {
  PlotSpec s = spec;
  s.log_x_base = log_x_base;
  const CsvTable table = load_csv_table(s.input);
  const std::string svg = render_svg(table, s);
  std::ofstream file(s.output, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + s.output + "' for writing");
  file << svg;
  file.flush();
  if (!file) throw UsageError("write to '" + s.output + "' failed");
  out << "wrote " << s.output << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolutionary algorithms on OneMax under prior bit-wise noise", "noisy_ea"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Run one EA until the optimum or the budget");
  run_cmd->add_option("--n", rf.n, "Problem size")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--lambda", rf.lambda, "Offspring per generation")->capture_default_str();
  run_cmd->add_option("--chi", rf.chi, "Mutation strength (rate chi/n)")->capture_default_str();
  run_cmd->add_option("--q", rf.q, "Noise strength (rate q/n)")->capture_default_str();
  run_cmd->add_option("--mode", rf.mode, "Selection")
      ->check(CLI::IsMember({"plus", "comma", "1p1", "one_plus_one"}))
      ->capture_default_str();
  run_cmd->add_option("--seed", rf.seed, "Seed")->capture_default_str();
  run_cmd->add_option("--budget", rf.budget, "Evaluation budget")->capture_default_str();
  run_cmd->add_flag("--trajectory", rf.trajectory, "Record distance changes");
  run_cmd->add_option("--format", rf.format)->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  run_cmd->add_option("--stop-rule", rf.stop_rule, "sampled or accepted")
      ->check(CLI::IsMember({"sampled", "accepted"}))
      ->capture_default_str();

  ExperimentFlags ef;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment grid and write CSVs");
  exp_cmd->add_option("--spec", ef.spec, "Experiment spec JSON file");
  exp_cmd->add_option("--preset", ef.preset, "fig2 or fig3");
  exp_cmd->add_option("--out", ef.out, "Output directory")->required();
  exp_cmd->add_flag("--full-grid", ef.full_grid, "Use the preset's full n grid");
  exp_cmd->add_flag("--lambda-floor", ef.lambda_floor, "Use floor(C ln n) instead of ceil");
  exp_cmd->add_option("--repetitions", ef.repetitions, "Override repetitions");
  exp_cmd->add_option("--seed", ef.seed, "Override master seed");
  exp_cmd->add_option("--stop-rule", ef.stop_rule, "Override stop rule")
      ->check(CLI::IsMember({"sampled", "accepted"}));

  DriftFlags df;
  auto* drift_cmd = app.add_subcommand("drift", "Estimate one-generation drift");
  drift_cmd->add_option("--n", df.n)->required();
  drift_cmd->add_option("--lambda", df.lambda)->capture_default_str();
  drift_cmd->add_option("--chi", df.chi)->capture_default_str();
  drift_cmd->add_option("--q", df.q)->capture_default_str();
  drift_cmd->add_option("--d", df.d, "Parent distance to the optimum")->required();
  drift_cmd->add_option("--samples", df.samples)->capture_default_str();
  drift_cmd->add_option("--seed", df.seed)->capture_default_str();
  drift_cmd->add_flag("--oracle", df.oracle, "Compare with exhaustive enumeration");
  drift_cmd->add_option("--format", df.format)->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  ProbsFlags pf;
  auto* probs_cmd = app.add_subcommand("probs", "Conditional offspring bit probabilities");
  probs_cmd->add_option("--n", pf.n)->required();
  probs_cmd->add_option("--chi", pf.chi)->capture_default_str();
  probs_cmd->add_option("--q", pf.q)->capture_default_str();
  probs_cmd->add_option("--samples", pf.samples)->capture_default_str();
  probs_cmd->add_option("--seed", pf.seed)->capture_default_str();
  probs_cmd->add_option("--format", pf.format)->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  BoundsFlags bf;
  auto* bounds_cmd = app.add_subcommand("bounds", "Drift bounds and runtime bounds");
  bounds_cmd->add_option("--n", bf.n)->required();
  bounds_cmd->add_option("--lambda", bf.lambda)->required();
  bounds_cmd->add_option("--chi", bf.chi)->capture_default_str();
  bounds_cmd->add_option("--q", bf.q)->capture_default_str();
  bounds_cmd->add_option("--d0", bf.d0, "Initial distance (default n)");
  bounds_cmd->add_option("--format", bf.format)->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  PlotSpec ps;
  std::optional<int> log_x_base;
  std::string yerr;
  auto* plot_cmd = app.add_subcommand("plot", "Render a summary CSV as an SVG line chart");
  plot_cmd->add_option("--input", ps.input)->required();
  plot_cmd->add_option("--x", ps.x)->required();
  plot_cmd->add_option("--y", ps.y)->required();
  plot_cmd->add_option("--yerr", yerr, "Error-bar column");
  plot_cmd->add_option("--series", ps.series)->required();
  plot_cmd->add_option("--log-x-base", log_x_base);
  plot_cmd->add_flag("--log-y", ps.log_y);
  plot_cmd->add_option("--output", ps.output)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == run_cmd) return do_run(rf, out);
    if (active == exp_cmd) return do_experiment(ef, out, err);
    if (active == drift_cmd) return do_drift(df, out);
    if (active == probs_cmd) return do_probs(pf, out);
    if (active == bounds_cmd) return do_bounds(bf, out);
    if (!yerr.empty()) ps.yerr = yerr;
    return do_plot(ps, log_x_base, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const UsageError*>(&e)) {
      err << active->help();
    }
    return kExitUsage;
  }
}

}  // namespace noisy_ea::cli
