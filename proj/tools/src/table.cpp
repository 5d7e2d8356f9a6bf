#include "mmsim/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mmsim::cli {

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* l = std::get_if<long>(&cell)) return std::to_string(*l);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

ResultTable::ResultTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table '" + name_ + "' has no columns");
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("table '" + name_ + "': row has " + std::to_string(row.size()) +
                                " cells, header has " + std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string ResultTable::to_csv(const Provenance& provenance) const {
  std::string out;
  out += "# table: " + name_ + "\n";
  out += "# config_hash: " + provenance.config_hash + "\n";
  out += "# seed: " + std::to_string(provenance.seed) + "\n";
  out += "# version: " + provenance.version + "\n";
  std::string units;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    units += (i ? "," : "") + (columns_[i].unit.empty() ? std::string("-") : columns_[i].unit);
  }
  out += "# units: " + units + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i].name;
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += "\n";
  }
  return out;
}

void ResultTable::write_csv(const std::filesystem::path& path, const Provenance& provenance) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << to_csv(provenance);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<double> ResultTable::column(const std::string& name) const {
  std::size_t index = columns_.size();
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) index = i;
  }
  if (index == columns_.size()) throw std::out_of_range("table '" + name_ + "' has no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    const Cell& c = row[index];
    if (const auto* d = std::get_if<double>(&c)) {
      out.push_back(*d);
    } else if (const auto* l = std::get_if<long>(&c)) {
      out.push_back(static_cast<double>(*l));
    } else {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

}  // namespace mmsim::cli
