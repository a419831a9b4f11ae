#pragma once

// Row tables written as RFC-4180 CSV (header row, %.17g numbers) or as a JSON
// array of objects with the same field names. Non-finite numbers are "nan" /
// "inf" in CSV and null in JSON.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace levyaf {

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
  /// Throws when the row width does not match the header.
  void add(std::vector<Cell> row);
};

std::string format_double(double v);
std::string to_csv(const Table& t);
std::string to_json(const Table& t);

}  // namespace levyaf
