#pragma once

// CIM-Transformation knowledge: motivations (problems/desires), the
// innovation statement, per-motivation strategies, and solution records
// with pros/cons/mitigations and candidate selection.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "easinnova/diagnostics.hpp"
#include "easinnova/matrix.hpp"

namespace easinnova {

enum class MotivationKind { Problem, Desire };

inline std::string_view to_string(MotivationKind k) {
  return k == MotivationKind::Problem ? "problem" : "desire";
}

inline std::optional<MotivationKind> parse_motivation_kind(std::string_view s) {
  if (s == "problem") return MotivationKind::Problem;
  if (s == "desire") return MotivationKind::Desire;
  return std::nullopt;
}

struct MotivationRecord {
  std::string label;
  MotivationKind kind = MotivationKind::Problem;
  std::string description;
};

struct InnovationStatement {
  std::string text;
};

struct StrategyRecord {
  std::string motivation_label;
  std::string strategy;
};

struct SolutionRecord {
  std::string label;
  std::string description;
  std::vector<std::string> pros;
  std::vector<std::string> cons;
  std::vector<std::string> mitigations;
  bool selected = false;
};

namespace detail {
inline const CellId kTransformationCell{Layer::Cim, Stage::Transformation};
}

inline std::vector<Diagnostic> validate_motivations(
    const std::vector<MotivationRecord>& records) {
  std::vector<Diagnostic> out;
  const std::string subject = "cim/transformation/motivations";
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.label).second)
      out.push_back(make_error("AN-DUP", detail::kTransformationCell, subject,
                               "duplicate motivation label '" + r.label + "'"));
    if (r.description.empty())
      out.push_back(make_error("AN-EMPTY", detail::kTransformationCell, subject,
                               "motivation '" + r.label + "' has an empty description"));
  }
  sort_diagnostics(out);
  return out;
}

// Pure bipartite check: every motivation needs a strategy, every strategy
// needs a motivation.
inline std::vector<Diagnostic> check_strategy_coverage(
    const std::vector<MotivationRecord>& motivations,
    const std::vector<StrategyRecord>& strategies) {
  std::vector<Diagnostic> out;
  const std::string subject = "cim/transformation/strategies";
  std::set<std::string> labels;
  for (const auto& m : motivations) labels.insert(m.label);
  std::set<std::string> covered;
  for (const auto& s : strategies) {
    if (!labels.count(s.motivation_label)) {
      out.push_back(make_error("STRAT-DANGLING", detail::kTransformationCell, subject,
                               "strategy references unknown motivation '" +
                                   s.motivation_label + "'"));
    } else {
      covered.insert(s.motivation_label);
    }
  }
  for (const auto& m : motivations) {
    if (!covered.count(m.label))
      out.push_back(make_error("STRAT-UNCOVERED", detail::kTransformationCell, subject,
                               "motivation '" + m.label + "' has no innovation strategy"));
  }
  sort_diagnostics(out);
  return out;
}

inline std::vector<Diagnostic> validate_solutions(const std::vector<SolutionRecord>& solutions) {
  std::vector<Diagnostic> out;
  const std::string subject = "cim/transformation/solutions";
  std::set<std::string> seen;
  int selected = 0;
  for (const auto& s : solutions) {
    if (!seen.insert(s.label).second)
      out.push_back(make_error("AN-DUP", detail::kTransformationCell, subject,
                               "duplicate solution label '" + s.label + "'"));
    if (s.selected) ++selected;
    if (s.cons.empty())
      out.push_back(make_warning("AN-ONESIDED", detail::kTransformationCell, subject,
                                 "solution '" + s.label + "' lists no cons"));
  }
  if (selected > 1)
    out.push_back(make_error("AN-SELECTION", detail::kTransformationCell, subject,
                             "more than one solution is marked selected"));
  sort_diagnostics(out);
  return out;
}

// Marks exactly the named record selected, clearing any previous choice.
inline std::vector<SolutionRecord> select_candidate(std::vector<SolutionRecord> solutions,
                                                    const std::string& label) {
  bool found = std::any_of(solutions.begin(), solutions.end(),
                           [&](const SolutionRecord& s) { return s.label == label; });
  if (!found) throw std::invalid_argument("unknown solution label '" + label + "'");
  for (auto& s : solutions) s.selected = (s.label == label);
  return solutions;
}

// ---- JSON artifact formats ----

struct AnalysisParseResult {
  std::vector<MotivationRecord> motivations;
  std::vector<StrategyRecord> strategies;
  std::vector<SolutionRecord> solutions;
  std::optional<InnovationStatement> statement;
  std::vector<Diagnostic> diagnostics;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (j.contains(key) && j[key].is_array())
    for (const auto& item : j[key])
      if (item.is_string()) out.push_back(item.get<std::string>());
  return out;
}

}  // namespace detail

inline std::pair<std::vector<MotivationRecord>, std::vector<Diagnostic>> parse_motivations(
    const nlohmann::json& doc) {
  std::vector<MotivationRecord> records;
  std::vector<Diagnostic> diags;
  const std::string subject = "cim/transformation/motivations";
  if (!doc.is_object() || !doc.contains("motivations") || !doc["motivations"].is_array()) {
    diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                               "motivations document must contain a 'motivations' array"));
    return {records, diags};
  }
  for (const auto& entry : doc["motivations"]) {
    if (!entry.is_object() || !entry.contains("label") || !entry["label"].is_string() ||
        !entry.contains("kind") || !entry["kind"].is_string()) {
      diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                                 "motivation entry needs string 'label' and 'kind'"));
      continue;
    }
    auto kind = parse_motivation_kind(entry["kind"].get<std::string>());
    if (!kind) {
      diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                                 "unknown motivation kind '" +
                                     entry["kind"].get<std::string>() + "'"));
      continue;
    }
    MotivationRecord r;
    r.label = entry["label"].get<std::string>();
    r.kind = *kind;
    if (entry.contains("description") && entry["description"].is_string())
      r.description = entry["description"].get<std::string>();
    records.push_back(std::move(r));
  }
  return {records, diags};
}

inline std::pair<std::vector<StrategyRecord>, std::vector<Diagnostic>> parse_strategies(
    const nlohmann::json& doc) {
  std::vector<StrategyRecord> records;
  std::vector<Diagnostic> diags;
  const std::string subject = "cim/transformation/strategies";
  if (!doc.is_object() || !doc.contains("strategies") || !doc["strategies"].is_array()) {
    diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                               "strategies document must contain a 'strategies' array"));
    return {records, diags};
  }
  for (const auto& entry : doc["strategies"]) {
    if (!entry.is_object() || !entry.contains("motivation") || !entry["motivation"].is_string() ||
        !entry.contains("strategy") || !entry["strategy"].is_string()) {
      diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                                 "strategy entry needs string 'motivation' and 'strategy'"));
      continue;
    }
    records.push_back({entry["motivation"].get<std::string>(),
                       entry["strategy"].get<std::string>()});
  }
  return {records, diags};
}

inline std::pair<std::vector<SolutionRecord>, std::vector<Diagnostic>> parse_solutions(
    const nlohmann::json& doc) {
  std::vector<SolutionRecord> records;
  std::vector<Diagnostic> diags;
  const std::string subject = "cim/transformation/solutions";
  if (!doc.is_object() || !doc.contains("solutions") || !doc["solutions"].is_array()) {
    diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                               "solutions document must contain a 'solutions' array"));
    return {records, diags};
  }
  for (const auto& entry : doc["solutions"]) {
    if (!entry.is_object() || !entry.contains("label") || !entry["label"].is_string()) {
      diags.push_back(make_error("AN-PARSE", detail::kTransformationCell, subject,
                                 "solution entry needs a string 'label'"));
      continue;
    }
    SolutionRecord r;
    r.label = entry["label"].get<std::string>();
    if (entry.contains("description") && entry["description"].is_string())
      r.description = entry["description"].get<std::string>();
    r.pros = detail::string_list(entry, "pros");
    r.cons = detail::string_list(entry, "cons");
    r.mitigations = detail::string_list(entry, "mitigations");
    if (entry.contains("selected") && entry["selected"].is_boolean())
      r.selected = entry["selected"].get<bool>();
    records.push_back(std::move(r));
  }
  return {records, diags};
}

inline std::pair<std::optional<InnovationStatement>, std::vector<Diagnostic>> parse_statement(
    const nlohmann::json& doc) {
  std::vector<Diagnostic> diags;
  if (!doc.is_object() || !doc.contains("text") || !doc["text"].is_string()) {
    diags.push_back(make_error("AN-PARSE", detail::kTransformationCell,
                               "cim/transformation/statement",
                               "statement document must contain a string 'text'"));
    return {std::nullopt, diags};
  }
  return {InnovationStatement{doc["text"].get<std::string>()}, diags};
}

inline nlohmann::ordered_json solutions_to_json(const std::vector<SolutionRecord>& solutions) {
  nlohmann::ordered_json doc;
  doc["solutions"] = nlohmann::ordered_json::array();
  for (const auto& s : solutions) {
    nlohmann::ordered_json entry;
    entry["label"] = s.label;
    entry["description"] = s.description;
    entry["pros"] = s.pros;
    entry["cons"] = s.cons;
    entry["mitigations"] = s.mitigations;
    entry["selected"] = s.selected;
    doc["solutions"].push_back(std::move(entry));
  }
  return doc;
}

}  // namespace easinnova
