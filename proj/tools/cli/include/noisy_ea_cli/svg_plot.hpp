#pragma once

#include <optional>
#include <string>

#include "noisy_ea_cli/csv_table.hpp"

namespace noisy_ea::cli {

struct PlotSpec {
  std::string input;
  std::string x;
  std::string y;
  std::optional<std::string> yerr;
  std::string series;
  std::optional<int> log_x_base;
  bool log_y = false;
  std::string output;
};

/// Line chart, one polyline per distinct value of the series column (in
/// order of first appearance), with optional symmetric error bars. The
/// output depends only on the table contents and the spec.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace noisy_ea::cli
