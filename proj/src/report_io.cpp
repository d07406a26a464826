#include "ncx/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "ncx/error.hpp"

namespace ncx {

void ResultSet::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::InvalidArgument, "row width " + std::to_string(row.size()) + " != " +
                                                std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

nlohmann::json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      c);
}

void write(std::ostream& out, const ResultSet& rs, OutputFormat format) {
  auto line = [&](const auto& cells, auto&& text) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << text(cells[i]);
    }
    out << '\n';
  };
  switch (format) {
    case OutputFormat::Table:
      for (const auto& row : rs.rows) line(row, [](const Cell& c) { return format_cell(c); });
      break;
    case OutputFormat::Csv:
      line(rs.columns, [](const std::string& s) { return csv_escape(s); });
      for (const auto& row : rs.rows) line(row, [](const Cell& c) { return csv_escape(format_cell(c)); });
      break;
    case OutputFormat::Jsonl:
      for (const auto& row : rs.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[rs.columns[i]] = to_json(row[i]);
        out << obj.dump() << '\n';
      }
      break;
  }
}

}  // namespace ncx
