#pragma once

// Cross-model rule engine R1-R8. Each rule is a pure predicate over the
// loaded project snapshot with an explicit cell scope; AsIs models check
// against the AsIs lexicon, ToBe models against the ToBe lexicon.
//
//   R1  lexicon link endpoints are declared terms        (cim/asis, cim/tobe)
//   R2  pool actors resolve (Actor term or org unit)     (pim/asis, pim/tobe)
//   R3  task names are Process terms                     (pim/asis, pim/tobe, psm/tobe)
//   R4  effect objects are Object terms                  (pim/asis, pim/tobe, psm/tobe)
//   R5  lane names resolve (Actor term or org unit)      (pim/asis, pim/tobe, psm/tobe)
//   R6  stored use cases have a supporting lexicon link  (pim/tobe)
//   R7  stored skeleton classes are Object/Actor terms   (pim/tobe)
//   R8  message-flow pools pass actor resolution         (psm/tobe)

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "easinnova/diagnostics.hpp"
#include "easinnova/project.hpp"

namespace easinnova {

struct RuleInfo {
  std::string code;
  std::vector<CellId> scope;
  Severity severity;
  std::string description;
};

inline const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> catalog = {
      {"R1",
       {{Layer::Cim, Stage::AsIs}, {Layer::Cim, Stage::ToBe}},
       Severity::Error,
       "every lexicon link endpoint is a declared term"},
      {"R2",
       {{Layer::Pim, Stage::AsIs}, {Layer::Pim, Stage::ToBe}},
       Severity::Error,
       "every pool actor is an Actor term or a declared organizational unit"},
      {"R3",
       {{Layer::Pim, Stage::AsIs}, {Layer::Pim, Stage::ToBe}, {Layer::Psm, Stage::ToBe}},
       Severity::Error,
       "every task name is a Process term"},
      {"R4",
       {{Layer::Pim, Stage::AsIs}, {Layer::Pim, Stage::ToBe}, {Layer::Psm, Stage::ToBe}},
       Severity::Error,
       "every task effect object is an Object term"},
      {"R5",
       {{Layer::Pim, Stage::AsIs}, {Layer::Pim, Stage::ToBe}, {Layer::Psm, Stage::ToBe}},
       Severity::Error,
       "every lane name is an Actor term or a declared organizational unit"},
      {"R6",
       {{Layer::Pim, Stage::ToBe}},
       Severity::Error,
       "every stored use case has a supporting Actor-Process lexicon link"},
      {"R7",
       {{Layer::Pim, Stage::ToBe}},
       Severity::Error,
       "every stored class-skeleton class is an Object or Actor term"},
      {"R8",
       {{Layer::Psm, Stage::ToBe}},
       Severity::Error,
       "every message flow connects pools whose actors resolve"},
  };
  return catalog;
}

namespace detail {

inline std::string stage_word(Stage stage) { return stage == Stage::AsIs ? "AsIs" : "ToBe"; }

inline bool actor_resolves(const std::string& name, const OpaalLexicon& lex,
                           const std::vector<std::string>* org_units) {
  if (lex.has(name, TermCategory::Actor)) return true;
  if (org_units)
    for (const auto& unit : *org_units)
      if (unit == name) return true;
  return false;
}

inline std::string task_display_name(const Node& node) {
  return node.name.empty() ? node.id : node.name;
}

}  // namespace detail

// Model-side rules for one process-model cell.
inline std::vector<Diagnostic> run_model_rules(const Project& project, CellId cell) {
  std::vector<Diagnostic> out;
  const CellContent& content = project.cell(cell);
  if (!content.process) return out;
  const ProcessModel& model = *content.process;
  const OpaalLexicon* lex = project.lexicon(cell.stage);
  if (!lex) return out;  // nothing to check against yet
  const auto* org_units = project.organizational_units();
  const std::string subject = cell.path() + "/process";
  const std::string stage_word = detail::stage_word(cell.stage);
  const bool pim = cell.layer == Layer::Pim;

  std::set<std::string> reported_actors, reported_tasks, reported_objects, reported_lanes;
  for (const auto& pool : model.pools) {
    if (pim && !detail::actor_resolves(pool.actor, *lex, org_units) &&
        reported_actors.insert(pool.actor).second) {
      out.push_back(make_error("R2", cell, subject,
                               "pool actor '" + pool.actor + "' not found in " + stage_word +
                                   " Actor terms or organizational units"));
    }
    for (const auto& lane : pool.lanes) {
      if (!detail::actor_resolves(lane, *lex, org_units) &&
          reported_lanes.insert(lane).second) {
        out.push_back(make_error("R5", cell, subject,
                                 "lane '" + lane + "' not found in " + stage_word +
                                     " Actor terms or organizational units"));
      }
    }
    for (const auto& node : pool.nodes) {
      if (node.kind == NodeKind::Task) {
        const std::string name = detail::task_display_name(node);
        if (!lex->has(name, TermCategory::Process) && reported_tasks.insert(name).second) {
          out.push_back(make_error("R3", cell, subject,
                                   "task '" + name + "' not found in " + stage_word +
                                       " Process terms"));
        }
        for (const auto& effect : node.effects) {
          if (!lex->has(effect.object, TermCategory::Object) &&
              reported_objects.insert(effect.object).second) {
            out.push_back(make_error("R4", cell, subject,
                                     "effect object '" + effect.object + "' not found in " +
                                         stage_word + " Object terms"));
          }
        }
      }
    }
  }

  // R8: message-flow endpoints' pools, one finding per failing pool.
  if (cell.layer == Layer::Psm) {
    std::set<std::string> message_pools, reported;
    for (const auto& flow : model.message_flows) {
      message_pools.insert(flow.source_pool);
      message_pools.insert(flow.target_pool);
    }
    for (const auto& name : message_pools) {
      if (!model.find_pool(name)) continue;  // PROC-BAD-REF territory
      if (!detail::actor_resolves(name, *lex, org_units) && reported.insert(name).second) {
        out.push_back(make_error("R8", cell, subject,
                                 "pool '" + name + "' participates in message flows but its "
                                 "actor is not a " + stage_word +
                                     " Actor term or organizational unit"));
      }
    }
  }

  sort_diagnostics(out);
  return out;
}

// Derived-artifact rules (PIM-ToBe cell).
inline std::vector<Diagnostic> run_derived_rules(const Project& project) {
  std::vector<Diagnostic> out;
  const CellId cell{Layer::Pim, Stage::ToBe};
  const CellContent& content = project.cell(cell);
  const OpaalLexicon* lex = project.lexicon(Stage::ToBe);
  if (!lex) return out;

  if (content.use_cases) {
    for (const auto& uc : *content.use_cases) {
      bool supported = false;
      for (const auto& link : lex->links) {
        const bool direct = link.source == uc.actor && link.target == uc.action;
        const bool flipped = link.source == uc.action && link.target == uc.actor;
        if (direct || flipped) {
          supported = true;
          break;
        }
      }
      if (!supported || !lex->has(uc.actor, TermCategory::Actor) ||
          !lex->has(uc.action, TermCategory::Process)) {
        out.push_back(make_error("R6", cell, "pim/tobe/use_cases",
                                 "use case (" + uc.actor + ", " + uc.action +
                                     ") has no supporting Actor-Process lexicon link"));
      }
    }
  }
  if (content.skeleton) {
    for (const auto& c : content.skeleton->classes) {
      if (!lex->has(c.name, TermCategory::Object) && !lex->has(c.name, TermCategory::Actor)) {
        out.push_back(make_error("R7", cell, "pim/tobe/class_skeleton",
                                 "class '" + c.name + "' is not a ToBe Object or Actor term"));
      }
    }
  }
  sort_diagnostics(out);
  return out;
}

// The full R1-R8 pass; optionally narrowed to the rules scoped to one cell.
inline std::vector<Diagnostic> run_rules(const Project& project,
                                         std::optional<CellId> scope = std::nullopt) {
  std::vector<Diagnostic> out;
  auto want = [&](CellId cell) { return !scope || *scope == cell; };

  for (Stage stage : {Stage::AsIs, Stage::ToBe}) {
    const CellId lexicon_cell{Layer::Cim, stage};
    if (want(lexicon_cell)) {
      if (const OpaalLexicon* lex = project.lexicon(stage)) {
        for (auto& d : check_link_endpoints(*lex)) out.push_back(std::move(d));
      }
    }
  }
  for (const CellId cell : {CellId{Layer::Pim, Stage::AsIs}, CellId{Layer::Pim, Stage::ToBe},
                            CellId{Layer::Psm, Stage::ToBe}}) {
    if (want(cell)) {
      for (auto& d : run_model_rules(project, cell)) out.push_back(std::move(d));
    }
  }
  if (want({Layer::Pim, Stage::ToBe})) {
    for (auto& d : run_derived_rules(project)) out.push_back(std::move(d));
  }
  sort_diagnostics(out);
  return out;
}

// Candidate lexicon additions: names used by models but absent from the
// stage lexicon, grouped by the category the use site implies.
struct TermSuggestions {
  // (stage, category) -> names
  std::map<std::pair<Stage, TermCategory>, std::set<std::string>> candidates;

  bool empty() const { return candidates.empty(); }
};

inline TermSuggestions suggest_terms(const Project& project) {
  TermSuggestions suggestions;
  for (Stage stage : {Stage::AsIs, Stage::ToBe}) {
    const OpaalLexicon* lex = project.lexicon(stage);
    if (!lex) continue;
    const auto* org_units = project.organizational_units();
    for (const ProcessModel* model : project.models_of_stage(stage)) {
      for (const auto& pool : model->pools) {
        if (!detail::actor_resolves(pool.actor, *lex, org_units))
          suggestions.candidates[{stage, TermCategory::Actor}].insert(pool.actor);
        for (const auto& lane : pool.lanes)
          if (!detail::actor_resolves(lane, *lex, org_units))
            suggestions.candidates[{stage, TermCategory::Actor}].insert(lane);
        for (const auto& node : pool.nodes) {
          if (node.kind != NodeKind::Task) continue;
          const std::string name = detail::task_display_name(node);
          if (!lex->has(name, TermCategory::Process))
            suggestions.candidates[{stage, TermCategory::Process}].insert(name);
          for (const auto& effect : node.effects)
            if (!lex->has(effect.object, TermCategory::Object))
              suggestions.candidates[{stage, TermCategory::Object}].insert(effect.object);
        }
      }
    }
  }
  return suggestions;
}

}  // namespace easinnova
