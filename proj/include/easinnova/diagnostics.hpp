#pragma once

// Uniform finding type emitted by every validator. Reports are sorted by
// (cell, code, subject, message) so renderings are byte-stable.

#include <algorithm>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "easinnova/matrix.hpp"

namespace easinnova {

enum class Severity { Info, Warning, Error };

inline std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Info: return "INFO";
    case Severity::Warning: return "WARNING";
    case Severity::Error: return "ERROR";
  }
  return "?";
}

struct Diagnostic {
  std::string code;      // catalog-stable, e.g. "R3", "GATE-CIM-ASIS-PROBLEMS"
  Severity severity = Severity::Error;
  CellId cell;
  std::string subject;   // path locating the offending element, e.g. "pim/tobe/process"
  std::string message;

  auto sort_key() const { return std::tie(cell, code, subject, message); }

  bool operator==(const Diagnostic& other) const {
    return severity == other.severity && sort_key() == other.sort_key();
  }
};

inline Diagnostic make_error(std::string code, CellId cell, std::string subject,
                             std::string message) {
  return {std::move(code), Severity::Error, cell, std::move(subject), std::move(message)};
}

inline Diagnostic make_warning(std::string code, CellId cell, std::string subject,
                               std::string message) {
  return {std::move(code), Severity::Warning, cell, std::move(subject), std::move(message)};
}

inline Diagnostic make_info(std::string code, CellId cell, std::string subject,
                            std::string message) {
  return {std::move(code), Severity::Info, cell, std::move(subject), std::move(message)};
}

inline void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return a.sort_key() < b.sort_key();
                   });
}

inline bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

inline std::size_t count_severity(std::span<const Diagnostic> diagnostics, Severity severity) {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [&](const Diagnostic& d) { return d.severity == severity; }));
}

// One line per finding: "<SEVERITY> <CODE> <subject>: <message>".
inline std::string render_text(const Diagnostic& d) {
  return std::string(to_string(d.severity)) + " " + d.code + " " + d.subject + ": " + d.message;
}

inline std::string render_report(std::span<const Diagnostic> diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    out += render_text(d);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = std::string(to_string(d.severity));
  j["code"] = d.code;
  j["cell"] = d.cell.path();
  j["subject"] = d.subject;
  j["message"] = d.message;
  return j;
}

inline nlohmann::ordered_json report_to_json(std::span<const Diagnostic> diagnostics) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : diagnostics) arr.push_back(to_json(d));
  return arr;
}

}  // namespace easinnova
