// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>  // vendored nlohmann/json

namespace nostretch {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct TableRow {
  int two_l = 0;
  double fidelity = 0.0;
};

/// Outcome of one CLI command. Serialises deterministically for a given seed.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<CheckResult> results;
  std::uint64_t seed = 0;
  std::vector<TableRow> table;
  std::vector<std::string> lines;  // human-readable summary, not serialised

  [[nodiscard]] bool pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }

  void param(std::string key, std::string value) {
    parameters.emplace_back(std::move(key), std::move(value));
  }

  /// Records value <= tolerance.
  CheckResult& at_most(std::string name, double value, double tolerance) {
    results.push_back({std::move(name), value, tolerance, value <= tolerance});
    return results.back();
  }

  /// Records a check whose pass flag is decided by the caller.
  CheckResult& check(std::string name, double value, double tolerance, bool pass) {
    results.push_back({std::move(name), value, tolerance, pass});
    return results.back();
  }
};

/// printf("%.<digits>g"); the CSV format uses 12 significant digits.
inline std::string format_significant(double value, int digits = 12) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

inline nlohmann::ordered_json to_json(const RunReport& report) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["command"] = report.command;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.parameters) params[k] = v;
  out["parameters"] = params;
  ordered_json results = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json item;
    item["check"] = r.name;
    // JSON has no infinity; unbounded values serialise as null.
    item["value"] = std::isfinite(r.value) ? ordered_json(r.value) : ordered_json(nullptr);
    item["tolerance"] = r.tolerance;
    item["pass"] = r.pass;
    results.push_back(std::move(item));
  }
  out["results"] = results;
  out["seed"] = report.seed;
  if (!report.table.empty()) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.table) rows.push_back({{"two_l", row.two_l}, {"fidelity", row.fidelity}});
    out["table"] = rows;
  }
  out["pass"] = report.pass();
  return out;
}

inline std::string render_json(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

/// Header `two_l,fidelity`, LF endings.
inline std::string render_csv(const RunReport& report) {
  std::string out = "two_l,fidelity\n";
  for (const auto& row : report.table) {
    out += std::to_string(row.two_l) + "," + format_significant(row.fidelity) + "\n";
  }
  return out;
}

inline std::string render_text(const RunReport& report) {
  std::ostringstream os;
  os << report.command;
  for (const auto& [k, v] : report.parameters) os << "  " << k << "=" << v;
  os << "\n";
  for (const auto& line : report.lines) os << line << "\n";
  if (!report.table.empty()) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%8s  %8s  %16s\n", "two_l", "l", "fidelity");
    os << buf;
    for (const auto& row : report.table) {
      const std::string l = row.two_l % 2 == 0 ? std::to_string(row.two_l / 2)
                                               : std::to_string(row.two_l) + "/2";
      std::snprintf(buf, sizeof buf, "%8d  %8s  %16s\n", row.two_l, l.c_str(),
                    format_significant(row.fidelity).c_str());
      os << buf;
    }
  }
  for (const auto& r : report.results) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " = " << format_significant(r.value)
       << "  (tol " << format_significant(r.tolerance, 3) << ")\n";
  }
  os << (report.pass() ? "OK" : "FAILED") << "\n";
  return os.str();
}

}  // namespace nostretch
