#pragma once

// Tabular results and their CSV / JSON serialization.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hilfer {

inline constexpr const char* kSchemaVersion = "hilfer-report/1";

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();  // derived quantities
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// RFC 4180: quote fields holding a separator, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

inline std::string meta_text(const nlohmann::ordered_json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace detail

/// `# key=value` lines for the config and derived quantities, then the header
/// row and one line per row. Doubles are written with 17 significant digits.
inline void write_csv(const Table& t, std::ostream& os) {
  os << "# schema_version=" << kSchemaVersion << '\n';
  os << "# command=" << t.command << '\n';
  for (const auto& [k, v] : t.config.items()) os << "# " << k << '=' << detail::meta_text(v) << '\n';
  for (const auto& [k, v] : t.meta.items()) os << "# " << k << '=' << detail::meta_text(v) << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << detail::csv_field(t.columns[c]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << detail::csv_field(detail::cell_text(row[c]));
    }
    os << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = t.command;
  j["config"] = t.config;
  j["derived"] = t.meta;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Cell& c : row) {
      std::visit(
          [&r](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              // JSON has no inf / nan
              if (std::isfinite(v)) {
                r.push_back(v);
              } else {
                r.push_back(detail::format_double(v));
              }
            } else {
              r.push_back(v);
            }
          },
          c);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline void write_json(const Table& t, std::ostream& os) { os << to_json(t).dump(2) << '\n'; }

}  // namespace hilfer
