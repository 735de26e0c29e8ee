#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "noisy_ea/experiments.hpp"

namespace noisy_ea {

namespace {

using nlohmann::json;

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

json to_json(const RunRecord& r) {
  return {{"mode", to_string(r.mode)}, {"n", r.n},         {"lambda", r.lambda},
          {"chi", r.chi},              {"q", r.q},         {"seed", r.seed},
          {"success", r.success},      {"evaluations", r.evaluations},
          {"iterations", r.iterations}};
}

json to_json(const SummaryRow& r) {
  return {{"mode", to_string(r.mode)}, {"n", r.n},
          {"lambda", r.lambda},        {"chi", r.chi},
          {"q", r.q},                  {"count", r.count},
          {"mean_evals", r.mean_evals}, {"std_evals", r.std_evals},
          {"mean_norm", r.mean_norm},  {"std_norm", r.std_norm},
          {"failures", r.failures}};
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRecordsCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.mode) << ',' << r.n << ',' << r.lambda << ',' << format_double(r.chi)
        << ',' << format_double(r.q) << ',' << r.seed << ',' << (r.success ? 1 : 0) << ','
        << r.evaluations << ',' << r.iterations << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.mode) << ',' << r.n << ',' << r.lambda << ',' << format_double(r.chi)
        << ',' << format_double(r.q) << ',' << r.count << ',' << format_double(r.mean_evals)
        << ',' << format_double(r.std_evals) << ',' << format_double(r.mean_norm) << ','
        << format_double(r.std_norm) << ',' << r.failures << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records) {
  json doc = json::array();
  for (const auto& r : records) doc.push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

void write_json(std::ostream& out, const std::vector<SummaryRow>& rows) {
  json doc = json::array();
  for (const auto& r : rows) doc.push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

void export_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  write_csv(out, records);
  finish(out, path);
}

void export_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  write_csv(out, rows);
  finish(out, path);
}

void export_json(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  write_json(out, records);
  finish(out, path);
}

void export_json(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  write_json(out, rows);
  finish(out, path);
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsCsvHeader) {
    throw std::runtime_error("records CSV must start with header '" +
                             std::string(kRecordsCsvHeader) + "'");
  }
  std::vector<RunRecord> records;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw std::runtime_error("records CSV line " + std::to_string(line_number) +
                               ": expected 9 fields");
    }
    try {
      RunRecord r;
      r.mode = parse_mode(f[0]);
      r.n = std::stoi(f[1]);
      r.lambda = std::stoi(f[2]);
      r.chi = std::stod(f[3]);
      r.q = std::stod(f[4]);
      r.seed = std::stoull(f[5]);
      r.success = f[6] == "1";
      r.evaluations = std::stoull(f[7]);
      r.iterations = std::stoull(f[8]);
      records.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("records CSV line " + std::to_string(line_number) + ": " +
                               e.what());
    }
  }
  return records;
}

std::vector<RunRecord> import_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  try {
    return read_records_csv(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

ExperimentSpec parse_experiment_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");

  static const char* const kKnown[] = {"algorithms", "n_values", "chi",         "q",
                                       "lambda_rule", "repetitions", "master_seed", "budget",
                                       "stop_rule"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw std::invalid_argument("unknown experiment spec key '" + key + "'");
    }
  }
  for (const char* required : {"algorithms", "n_values", "lambda_rule", "repetitions"}) {
    if (!doc.contains(required)) {
      throw std::invalid_argument(std::string("experiment spec is missing '") + required + "'");
    }
  }

  ExperimentSpec spec;
  try {
    for (const auto& a : doc.at("algorithms")) spec.algorithms.push_back(parse_mode(a.get<std::string>()));
    spec.n_values = doc.at("n_values").get<std::vector<int>>();
    spec.chi = doc.value("chi", spec.chi);
    spec.q = doc.value("q", spec.q);
    const auto& rule = doc.at("lambda_rule");
    spec.lambda_rule.kind = parse_lambda_rule_kind(rule.at("type").get<std::string>());
    spec.lambda_rule.value = rule.value("value", 1.0);
    spec.repetitions = doc.at("repetitions").get<int>();
    spec.master_seed = doc.value("master_seed", spec.master_seed);
    spec.budget = doc.value("budget", spec.budget);
    if (doc.contains("stop_rule")) spec.stop_rule = parse_stop_rule(doc.at("stop_rule").get<std::string>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_experiment_spec(text.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  json algorithms = json::array();
  for (Mode m : spec.algorithms) algorithms.push_back(to_string(m));
  json doc = {{"algorithms", algorithms},
              {"n_values", spec.n_values},
              {"chi", spec.chi},
              {"q", spec.q},
              {"lambda_rule",
               {{"type", to_string(spec.lambda_rule.kind)}, {"value", spec.lambda_rule.value}}},
              {"repetitions", spec.repetitions},
              {"master_seed", spec.master_seed},
              {"budget", spec.budget},
              {"stop_rule", to_string(spec.stop_rule)}};
  return doc.dump(2);
}

}  // namespace noisy_ea
