#include "powex/table_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace powex {

std::optional<Format> parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

namespace {

void trim_fraction(std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos) return;
  auto end = s.find_last_not_of('0');
  if (end == dot) --end;
  s.erase(end + 1);
}

}  // namespace

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  precision = precision < 1 ? 1 : (precision > 17 ? 17 : precision);

  char buf[64];
  const double a = std::fabs(v);
  if (a < 1e-4 || a >= 1e6) {
    std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
    std::string s(buf);
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    trim_fraction(mantissa);
    return mantissa + s.substr(e);
  }
  const int exponent = static_cast<int>(std::floor(std::log10(a)));
  const int decimals = std::max(0, precision - 1 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  trim_fraction(s);
  if (s == "-0") s = "0";
  return s;
}

std::string emit_table(const Table& table, Format format, int precision) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("emit_table: row arity does not match the schema");
    }
  }

  if (format == Format::json) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (std::isfinite(row[i])) {
          obj[table.columns[i]] = std::stod(format_number(row[i], precision));
        } else {
          obj[table.columns[i]] = nullptr;
        }
      }
      doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
  }

  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i], precision);
    }
    out += '\n';
  }
  for (const auto& c : table.comments) out += "# " + c + "\n";
  return out;
}

}  // namespace powex
