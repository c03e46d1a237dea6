#ifndef CREDIT_TABLE_HPP
#define CREDIT_TABLE_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace credit {

/// Blank, integer or real table cell.
using Cell = std::variant<std::monostate, std::int64_t, double>;

/// Rectangular result of an experiment plus a JSON metadata block.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
  double real(std::size_t row, const std::string& column) const;
};

/// Shortest decimal rendering that still round-trips: 17 significant digits.
std::string format_real(double value);

/// Comma-separated, header row first, LF line endings.
void emit_csv(const ResultTable& table, std::ostream& out);
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

/// `dir/name.csv` -> `dir/name.meta.json`.
std::filesystem::path meta_sidecar_path(const std::filesystem::path& csv_path);

}  // namespace credit

#endif  // CREDIT_TABLE_HPP
