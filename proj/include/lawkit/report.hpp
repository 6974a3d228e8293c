#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace lawkit {

/// One certified check: a stable id, the property statement in plain words,
/// the verdict, an optional witness, and named numeric residuals.
struct ReportRecord {
  std::string id;
  std::string statement;
  bool pass = true;
  std::string witness;
  std::vector<std::pair<std::string, double>> residuals;
};

/// Full run report. The JSON rendering is deterministic: fixed key order, no
/// timestamp, floats at 17 significant digits.
struct Report {
  std::string command;
  std::string config_digest;
  std::vector<ReportRecord> records;

  bool all_pass() const {
    for (const ReportRecord& r : records)
      if (!r.pass) return false;
    return true;
  }

  int exit_status() const { return all_pass() ? 0 : 1; }

  void add(ReportRecord record) { records.push_back(std::move(record)); }

  std::string to_json() const {
    std::string out;
    out += "{\n";
    out += "  \"command\": " + quoted(command) + ",\n";
    out += "  \"config_digest\": " + quoted(config_digest) + ",\n";
    out += "  \"records\": [";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const ReportRecord& r = records[i];
      out += i == 0 ? "\n" : ",\n";
      out += "    {\n";
      out += "      \"id\": " + quoted(r.id) + ",\n";
      out += "      \"statement\": " + quoted(r.statement) + ",\n";
      out += std::string("      \"verdict\": ") + (r.pass ? "\"pass\"" : "\"fail\"") +
             ",\n";
      out += "      \"witness\": " + quoted(r.witness) + ",\n";
      out += "      \"residuals\": {";
      for (std::size_t j = 0; j < r.residuals.size(); ++j) {
        out += j == 0 ? "" : ", ";
        out += quoted(r.residuals[j].first) + ": " + fmt(r.residuals[j].second);
      }
      out += "}\n    }";
    }
    out += records.empty() ? "],\n" : "\n  ],\n";
    out += "  \"exit_status\": " + std::to_string(exit_status()) + "\n";
    out += "}\n";
    return out;
  }

  std::string to_text() const {
    std::string out;
    out += "command: " + command + "\n";
    out += "config:  " + config_digest + "\n";
    for (const ReportRecord& r : records) {
      out += std::string(r.pass ? "[pass] " : "[FAIL] ") + r.id + ": " + r.statement;
      if (!r.witness.empty()) out += "  (" + r.witness + ")";
      for (const auto& [name, value] : r.residuals)
        out += "  " + name + "=" + fmt(value);
      out += "\n";
    }
    out += all_pass() ? "result: pass\n" : "result: FAIL\n";
    return out;
  }

private:
  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  static std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
      }
    }
    out += "\"";
    return out;
  }
};

}  // namespace lawkit
