#pragma once

// Flat result tables for commands whose output is not a VerificationReport.
// Same conventions: %.17g in CSV, empty cells and JSON null for absent values.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ingham/report_io.hpp"

namespace ingham::cli {

using Cell = std::variant<std::monostate, std::uint64_t, double, std::string, bool>;

struct Table {
  std::string experiment_id;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw error("internal: row width mismatch");
    rows.push_back(std::move(row));
  }
};

inline io::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> io::json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>)
          return nullptr;
        else if constexpr (std::is_same_v<V, double>)
          return io::number(v);
        else
          return v;
      },
      c);
}

inline std::string cell_csv(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>)
          return "";
        else if constexpr (std::is_same_v<V, double>)
          return io::fmt(v);
        else if constexpr (std::is_same_v<V, bool>)
          return v ? "true" : "false";
        else if constexpr (std::is_same_v<V, std::string>)
          return v;
        else
          return std::to_string(v);
      },
      c);
}

inline std::string to_json_text(const Table& t) {
  io::json j;
  j["experiment_id"] = t.experiment_id;
  j["columns"] = t.columns;
  io::json rows = io::json::array();
  for (const auto& r : t.rows) {
    io::json o;
    for (std::size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  io::json s = io::json::object();
  for (const auto& [k, v] : t.summary) s[k] = cell_json(v);
  j["summary"] = std::move(s);
  return io::dump(j);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell_csv(r[i]);
    out += "\n";
  }
  return out;
}

}  // namespace ingham::cli
