#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace nanotrap::csv {

/// Nine significant digits, scientific notation ("%.8e"). Locale independent.
std::string sci(double value);

/// As sci(), or the literal NA when the value is absent or not finite.
std::string sci_or_na(std::optional<double> value);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

/// Empty cells (monostate) render as NA.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

std::string render(const Cell& cell);

/// Column-named rows shared by the CSV writers and the CLI's JSON output.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& out) const;
};

}  // namespace nanotrap::csv
