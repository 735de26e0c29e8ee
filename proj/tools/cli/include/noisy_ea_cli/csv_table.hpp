#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace noisy_ea::cli {

/// Plain comma-separated table with a header row. No quoting support; the
/// files this tool writes never need it.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header, or throws std::invalid_argument.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable read_csv_table(std::istream& in);
CsvTable load_csv_table(const std::filesystem::path& path);

}  // namespace noisy_ea::cli
