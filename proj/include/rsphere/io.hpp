#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rsphere/analysis.hpp"
#include "rsphere/theta.hpp"
#include "rsphere/types.hpp"

namespace rsphere {

/// Integers are written exactly, reals with 12 significant digits, text
/// verbatim (quoted and escaped in JSON).
using Cell = std::variant<Int128, double, std::string>;

struct RecordTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_real(double value);

/// Header row plus one line per record.
std::string to_csv(const RecordTable& table);
/// Array of flat objects keyed by column name; non-finite reals become null.
std::string to_json(const RecordTable& table);

RecordTable scan_table(const std::vector<ScanRecord>& records);
RecordTable divisor_scan_table(const std::vector<DivisorScanRecord>& records);
RecordTable coefficient_table(const CoefficientTable& table);

struct NamedValue {
  std::string name;
  double value = 0;
};
RecordTable constants_table(const std::vector<NamedValue>& values);

}  // namespace rsphere
