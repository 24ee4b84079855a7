#include "nanotrap/csv.hpp"

#include <charconv>
#include <cmath>

namespace nanotrap::csv {

std::string sci(double value) {
  if (!std::isfinite(value)) return "NA";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 8);
  return std::string(buf, res.ptr);
}

std::string sci_or_na(std::optional<double> value) { return value ? sci(*value) : "NA"; }

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::string render(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "NA"; }
    std::string operator()(double v) const { return sci(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

void Table::write_csv(std::ostream& out) const {
  write_row(out, columns);
  std::vector<std::string> cells;
  for (const auto& row : rows) {
    cells.clear();
    for (const auto& c : row) cells.push_back(render(c));
    write_row(out, cells);
  }
}

}  // namespace nanotrap::csv
