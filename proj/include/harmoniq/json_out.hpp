#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

namespace harmoniq {

/// Ordered key/value rows rendered as JSON or CSV with deterministic
/// formatting: doubles always use 17 significant digits.
struct Row {
  using Value = std::variant<double, int64_t, std::string, bool>;
  std::vector<std::pair<std::string, Value>> fields;

  void add(const std::string& key, double v) { fields.emplace_back(key, v); }
  void add(const std::string& key, int v) { fields.emplace_back(key, static_cast<int64_t>(v)); }
  void add(const std::string& key, int64_t v) { fields.emplace_back(key, v); }
  void add(const std::string& key, const std::string& v) { fields.emplace_back(key, v); }
  void add(const std::string& key, const char* v) { fields.emplace_back(key, std::string(v)); }
  void add(const std::string& key, bool v) { fields.emplace_back(key, v); }
};

inline std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string value_to_json(const Row::Value& v) {
  if (std::holds_alternative<double>(v)) return format_double17(std::get<double>(v));
  if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  return "\"" + json_escape(std::get<std::string>(v)) + "\"";
}

inline std::string to_json(const Row& row) {
  std::string out = "{";
  for (size_t i = 0; i < row.fields.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(row.fields[i].first) + "\": " + value_to_json(row.fields[i].second);
  }
  out += "}";
  return out;
}

inline std::string to_json(const std::vector<Row>& rows) {
  if (rows.size() == 1) return to_json(rows[0]) + "\n";
  std::string out = "[\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    out += "  " + to_json(rows[i]);
    if (i + 1 < rows.size()) out += ",";
    out += "\n";
  }
  out += "]\n";
  return out;
}

inline std::string value_to_csv(const Row::Value& v) {
  if (std::holds_alternative<double>(v)) return format_double17(std::get<double>(v));
  if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  return std::get<std::string>(v);
}

inline std::string to_csv(const std::vector<Row>& rows) {
  if (rows.empty()) return "";
  std::string out;
  for (size_t i = 0; i < rows[0].fields.size(); ++i) {
    if (i) out += ",";
    out += rows[0].fields[i].first;
  }
  out += "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.fields.size(); ++i) {
      if (i) out += ",";
      out += value_to_csv(row.fields[i].second);
    }
    out += "\n";
  }
  return out;
}

}  // namespace harmoniq
