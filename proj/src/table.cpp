#include "fracspec/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fracspec/errors.hpp"

namespace fracspec {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width does not match the header");
  rows.push_back(std::move(row));
}

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw ParseError("unknown format \"" + name + "\" (expected csv or json)");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>)
          return v;
        else if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else
          return std::to_string(v);
      },
      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
        }
        return v;
      },
      cell);
}

}  // namespace

void write_table(const Table& table, TableFormat format, std::ostream& out) {
  if (format == TableFormat::csv) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << csv_field(table.columns[j]);
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_field(cell_text(row[j]));
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[table.columns[j]] = cell_json(row[j]);
    rows.push_back(std::move(obj));
  }
  out << rows.dump(1) << '\n';
}

void emit_table(const Table& table, TableFormat format, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    write_table(table, format, fallback);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open \"" + path + "\" for writing");
  write_table(table, format, out);
  if (!out) throw IOError("write to \"" + path + "\" failed");
}

}  // namespace fracspec
