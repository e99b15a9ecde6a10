#pragma once

// Numeric CSV: one header row, comma separator, LF endings, shortest
// round-trip decimal for every value.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "nhergo/action_table.hpp"
#include "nhergo/error.hpp"

namespace nhergo {

inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    detail::fail(ErrorCategory::parse, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row) {
    detail::require(row.size() == columns.size(), ErrorCategory::invalid_argument, "row width differs from header");
    rows.push_back(std::move(row));
  }

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return i;
    }
    detail::fail(ErrorCategory::parse, "missing column '" + std::string(name) + "'");
  }
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

inline std::string to_csv_string(const CsvTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) detail::fail(ErrorCategory::parse, "empty CSV");
  for (auto f : split_fields(line)) t.columns.emplace_back(f);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != t.columns.size()) {
      detail::fail(ErrorCategory::parse, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(t.columns.size()) + " fields");
    }
    std::vector<double> row;
    for (auto f : fields) row.push_back(parse_double(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable parse_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

/// Columns h, a, k0, T_orbit, components; an unbounded period is written inf.
inline CsvTable action_table_csv(const ActionTable& table) {
  CsvTable t{{"h", "a", "k0", "T_orbit", "components"}, {}};
  for (const auto& e : table.entries()) {
    t.add_row({e.h, e.a, e.k0, e.period, static_cast<double>(e.components)});
  }
  return t;
}

inline ActionTable action_table_from_csv(const CsvTable& t, ModelKind kind) {
  const std::size_t ih = t.column("h");
  const std::size_t ia = t.column("a");
  const std::size_t ik = t.column("k0");
  const std::size_t iT = t.column("T_orbit");
  const std::size_t ic = t.column("components");
  std::vector<ActionTableEntry> entries;
  for (const auto& r : t.rows) {
    entries.push_back({r[ih], r[ia], r[ik], r[iT], static_cast<int>(r[ic])});
  }
  return ActionTable(kind, std::move(entries));
}

}  // namespace nhergo
