#include "rsphere/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace rsphere {

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string cell_text(const Cell& cell, bool json) {
  if (const auto* i = std::get_if<Int128>(&cell)) return to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) {
    if (json && !std::isfinite(*d)) return "null";
    return format_real(*d);
  }
  const auto& text = std::get<std::string>(cell);
  return json ? nlohmann::json(text).dump() : csv_field(text);
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const RecordTable& table) {
  std::ostringstream out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << csv_field(table.columns[j]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << cell_text(row[j], false);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const RecordTable& table) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out << (i ? ",\n  {" : "\n  {");
    const auto& row = table.rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? ", " : "") << nlohmann::json(table.columns[j]).dump() << ": " << cell_text(row[j], true);
    }
    out << '}';
  }
  out << (table.rows.empty() ? "]\n" : "\n]\n");
  return out.str();
}

RecordTable scan_table(const std::vector<ScanRecord>& records) {
  RecordTable table{{"n", "T", "count", "main_term", "remainder", "normalized"}, {}};
  for (const auto& r : records) {
    table.rows.push_back({Int128{r.n}, Int128{r.T}, Int128{r.count}, r.main_term, r.remainder, r.normalized});
  }
  return table;
}

RecordTable divisor_scan_table(const std::vector<DivisorScanRecord>& records) {
  RecordTable table{{"T", "sum", "normalized", "constant", "relative_error"}, {}};
  for (const auto& r : records) {
    Cell sum = r.exact ? Cell{r.exact_sum} : Cell{static_cast<double>(r.sum)};
    table.rows.push_back({Int128{r.T}, sum, r.normalized, r.constant, r.relative_error});
  }
  return table;
}

RecordTable coefficient_table(const CoefficientTable& coefficients) {
  RecordTable table{{"m", "count"}, {}};
  for (std::int64_t m = 0; m <= coefficients.limit; ++m) table.rows.push_back({Int128{m}, Int128{coefficients[m]}});
  return table;
}

RecordTable constants_table(const std::vector<NamedValue>& values) {
  RecordTable table{{"name", "value"}, {}};
  for (const auto& v : values) table.rows.push_back({v.name, v.value});
  return table;
}

}  // namespace rsphere
