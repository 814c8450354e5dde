#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace powex {

enum class Format { csv, json };

std::optional<Format> parse_format(std::string_view name);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // CSV only: emitted after the rows as "# ..." lines
  std::vector<std::string> comments;
};

/// `precision` significant digits; scientific notation when |v| < 1e-4 or
/// |v| >= 1e6, plain otherwise, trailing zeros trimmed.
std::string format_number(double v, int precision);

/// Serializes the table. Throws std::logic_error when a row's arity differs
/// from the column count.
std::string emit_table(const Table& table, Format format, int precision);

}  // namespace powex
