#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace prophet::lab {

using Cell = std::variant<std::uint64_t, double, std::string, bool>;

// A command result: named columns, rows in emission order, and warnings
// that do not stop the run.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;

  void add_row(std::vector<Cell> row);
};

// Seven significant digits, plain decimal notation, trailing zeros dropped.
std::string format_number(double x);
std::string format_cell(const Cell& cell);

// Comma separated with a header row and LF line endings.
void write_csv(std::ostream& out, const Table& table);

// {"command": ..., "columns": [...], "rows": [{column: value}], "warnings": [...]}.
// Numbers carry the same rounding as the CSV rendering.
nlohmann::ordered_json table_to_json(const std::string& command, const Table& table);

}  // namespace prophet::lab
