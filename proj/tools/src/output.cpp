#include "prophet_lab/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace prophet::lab {
namespace {

void trim_zeros(std::string& s) {
  if (s.find('.') == std::string::npos) return;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", x);
  std::string s(buf);
  if (s.find('e') == std::string::npos) return s;
  const double rounded = std::strtod(buf, nullptr);
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(rounded))));
  const int decimals = std::max(0, 6 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  s = buf;
  trim_zeros(s);
  return s;
}

std::string format_cell(const Cell& cell) {
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
  return std::get<std::string>(cell);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

nlohmann::ordered_json table_to_json(const std::string& command, const Table& table) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) {
          obj[table.columns[i]] = std::strtod(format_number(*d).c_str(), nullptr);
        } else {
          obj[table.columns[i]] = nullptr;
        }
      } else if (const auto* u = std::get_if<std::uint64_t>(&c)) {
        obj[table.columns[i]] = *u;
      } else if (const auto* b = std::get_if<bool>(&c)) {
        obj[table.columns[i]] = *b;
      } else {
        obj[table.columns[i]] = std::get<std::string>(c);
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["warnings"] = table.warnings;
  return doc;
}

}  // namespace prophet::lab
