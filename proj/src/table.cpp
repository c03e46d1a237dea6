#include "credit/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "credit/errors.hpp"

namespace credit {

void ResultTable::add_row(std::vector<Cell> row) {
  detail::require(row.size() == columns.size(), "row width must match the column count");
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return i;
    }
  }
  throw InvalidArgument("no column named " + name);
}

double ResultTable::real(std::size_t row, const std::string& column) const {
  const Cell& cell = rows.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&cell)) {
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    return static_cast<double>(*i);
  }
  throw InvalidArgument("cell " + column + " is blank");
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void emit_csv(const ResultTable& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out << ',';
      }
      if (const auto* d = std::get_if<double>(&row[i])) {
        out << format_real(*d);
      } else if (const auto* n = std::get_if<std::int64_t>(&row[i])) {
        out << *n;
      }
    }
    out << '\n';
  }
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  emit_csv(table, out);
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

std::filesystem::path meta_sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path sidecar = csv_path;
  sidecar.replace_extension(".meta.json");
  return sidecar;
}

}  // namespace credit
