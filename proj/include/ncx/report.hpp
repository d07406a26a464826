#pragma once

// Column-oriented result sets written as CSV, JSON lines or plain rows.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace ncx {

using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

enum class OutputFormat { Table, Csv, Jsonl };

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  ResultSet() = default;
  explicit ResultSet(std::vector<std::string> cols) : columns(std::move(cols)) {}

  // Throws InvalidArgument when the width does not match.
  void add(std::vector<Cell> row);
};

std::string format_cell(const Cell& c);

// Table: comma-separated rows without a header. Csv: the same with a header row
// and quoting where needed. Jsonl: one object per row keyed by column name.
void write(std::ostream& out, const ResultSet& rs, OutputFormat format);

}  // namespace ncx
