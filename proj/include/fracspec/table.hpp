#ifndef FRACSPEC_TABLE_HPP
#define FRACSPEC_TABLE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace fracspec {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Homogeneous rows under named columns. Complex values go in as two
/// columns (re, im).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class TableFormat { csv, json };

TableFormat parse_table_format(const std::string& name);

/// RFC 4180 CSV (header line, '\n' line ends, fields quoted only when
/// needed) or a JSON array of objects. Doubles use shortest round-trip form
/// with '.' as the decimal mark, so equal inputs give identical bytes.
void write_table(const Table& table, TableFormat format, std::ostream& out);
/// Same, to a file; "-" or an empty path means `fallback`. Throws IOError.
void emit_table(const Table& table, TableFormat format, const std::string& path, std::ostream& fallback);

std::string format_double(double value);

}  // namespace fracspec

#endif  // FRACSPEC_TABLE_HPP
