#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace mmsim::cli {

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version;
};

using Cell = std::variant<double, long, std::string>;

struct Column {
  std::string name;
  std::string unit;
};

/// Rectangular table written as CSV with `#` provenance comments.
class ResultTable {
 public:
  ResultTable(std::string name, std::vector<Column> columns);

  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// Throws std::invalid_argument when the row width does not match the header.
  void add_row(std::vector<Cell> row);

  std::string to_csv(const Provenance& provenance) const;
  void write_csv(const std::filesystem::path& path, const Provenance& provenance) const;

  /// Numeric column by name; non-numeric cells are NaN.
  std::vector<double> column(const std::string& name) const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Shortest round-trip-stable text for a double ("%.12g").
std::string format_number(double value);

}  // namespace mmsim::cli
