#pragma once

// Per-cell completion gates. A cell is Ready when its checklist passes with
// zero blocking errors; it is Empty when no artifact file is present. The
// checklist for each cell is fixed (see cell_checklist below); findings from
// validators outside the checklist are still reported but do not block —
// notably the AsIs lexicon's link-endpoint errors, which the method treats
// as expected incompleteness of the preliminary CIM models.
//
// Dependent checklist items are skipped while their prerequisite fails:
// PSM-ToBe runs export and simulation only once the model is executable, so
// one defect surfaces as one finding.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "easinnova/bpmn.hpp"
#include "easinnova/consistency.hpp"
#include "easinnova/cruda.hpp"
#include "easinnova/diagnostics.hpp"
#include "easinnova/project.hpp"
#include "easinnova/simulate.hpp"

namespace easinnova {

enum class CellState { Empty, Draft, Ready };

inline std::string_view to_string(CellState s) {
  switch (s) {
    case CellState::Empty: return "Empty";
    case CellState::Draft: return "Draft";
    case CellState::Ready: return "Ready";
  }
  return "?";
}

struct CellStatus {
  CellState state = CellState::Empty;
  std::vector<Diagnostic> diagnostics;
};

namespace gate_detail {

inline bool blank(const std::string& text) {
  return text.find_first_not_of(" \t\r\n") == std::string::npos;
}

// Names the stage's models reference, for the lexicon orphan check.
inline ModelUsage stage_usage(const Project& project, Stage stage) {
  ModelUsage usage;
  for (const ProcessModel* model : project.models_of_stage(stage)) {
    for (const auto& pool : model->pools) {
      usage.used_names.insert(pool.actor);
      for (const auto& lane : pool.lanes) usage.used_names.insert(lane);
      for (const auto& node : pool.nodes) {
        if (node.kind != NodeKind::Task) continue;
        usage.used_names.insert(node.name.empty() ? node.id : node.name);
        for (const auto& effect : node.effects) usage.used_names.insert(effect.object);
      }
    }
  }
  return usage;
}

struct GateEvaluation {
  bool blocked = false;
  std::vector<Diagnostic> diagnostics;

  void add(Diagnostic d) { diagnostics.push_back(std::move(d)); }
  void block(Diagnostic d) {
    blocked = true;
    diagnostics.push_back(std::move(d));
  }
  // Validator findings whose errors block the gate.
  void require_clean(std::vector<Diagnostic> findings) {
    if (has_errors(findings)) blocked = true;
    for (auto& d : findings) diagnostics.push_back(std::move(d));
  }
  // Findings that are reported but never block.
  void report(std::vector<Diagnostic> findings) {
    for (auto& d : findings) diagnostics.push_back(std::move(d));
  }
};

inline void evaluate_cim_asis(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Cim, Stage::AsIs};
  const CellContent& content = project.cell(cell);
  if (!content.narrative || blank(*content.narrative))
    gate.block(make_error("GATE-CIM-ASIS-NARRATIVE", cell, "cim/asis/narrative.md",
                          "AsIs narrative is missing or blank"));
  if (!content.lexicon) {
    gate.block(make_error("GATE-CIM-ASIS-LEXICON", cell, "cim/asis/lexicon",
                          "AsIs lexicon is missing"));
  } else {
    // Parse errors for this cell's artifacts block; they live in the
    // artifact diagnostics which the caller already reported.
    gate.report(validate_lexicon(*content.lexicon,
                                 project.settings.lexicon_settings(Stage::AsIs),
                                 stage_usage(project, Stage::AsIs)));
  }
  const auto& motivations = project.cell({Layer::Cim, Stage::Transformation}).motivations;
  if (!motivations || motivations->empty())
    gate.block(make_error("GATE-CIM-ASIS-PROBLEMS", cell, "cim/transformation/motivations",
                          "problem analysis needs at least one motivation record"));
}

inline void evaluate_cim_transformation(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Cim, Stage::Transformation};
  const CellContent& content = project.cell(cell);
  if (!content.statement || blank(content.statement->text))
    gate.block(make_error("GATE-CIM-TRANSFORMATION-STATEMENT", cell,
                          "cim/transformation/statement",
                          "innovation statement is missing or blank"));
  const std::vector<MotivationRecord> motivations =
      content.motivations.value_or(std::vector<MotivationRecord>{});
  gate.require_clean(validate_motivations(motivations));
  gate.require_clean(check_strategy_coverage(
      motivations, content.strategies.value_or(std::vector<StrategyRecord>{})));

  const std::vector<SolutionRecord> solutions =
      content.solutions.value_or(std::vector<SolutionRecord>{});
  gate.require_clean(validate_solutions(solutions));
  const bool documented = std::any_of(solutions.begin(), solutions.end(),
                                      [](const SolutionRecord& s) {
                                        return !s.pros.empty() && !s.cons.empty();
                                      });
  if (!documented)
    gate.block(make_error("GATE-CIM-TRANSFORMATION-SOLUTIONS", cell,
                          "cim/transformation/solutions",
                          "need at least one solution with pros and cons"));
  const long selected = std::count_if(solutions.begin(), solutions.end(),
                                      [](const SolutionRecord& s) { return s.selected; });
  if (selected == 0)
    gate.block(make_error("GATE-CIM-TRANSFORMATION-SELECTION", cell,
                          "cim/transformation/solutions", "no candidate solution is selected"));
}

inline void evaluate_signoff(const Project& project, CellId cell, const std::string& code,
                             GateEvaluation& gate) {
  for (const auto& actor : project.actors_registry) {
    if (!actor.signed_off)
      gate.block(make_error(code, cell, "project/actors_registry",
                            "actor '" + actor.name + "' has not signed off"));
  }
}

inline void evaluate_cim_tobe(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Cim, Stage::ToBe};
  const CellContent& content = project.cell(cell);
  if (!content.narrative || blank(*content.narrative))
    gate.block(make_error("GATE-CIM-TOBE-NARRATIVE", cell, "cim/tobe/narrative.md",
                          "ToBe narrative is missing or blank"));
  if (!content.lexicon) {
    gate.block(make_error("GATE-CIM-TOBE-LEXICON", cell, "cim/tobe/lexicon",
                          "ToBe lexicon is missing"));
  } else {
    gate.report(validate_lexicon(*content.lexicon,
                                 project.settings.lexicon_settings(Stage::ToBe),
                                 stage_usage(project, Stage::ToBe)));
  }
  evaluate_signoff(project, cell, "GATE-CIM-TOBE-SIGNOFF", gate);
}

inline void evaluate_model_cell(const Project& project, CellId cell, const std::string& code,
                                GateEvaluation& gate) {
  const CellContent& content = project.cell(cell);
  if (!content.process) {
    gate.block(make_error(code, cell, cell.path() + "/process",
                          "process model is missing"));
    return;
  }
  gate.require_clean(validate_structure(*content.process));
  gate.require_clean(run_model_rules(project, cell));
}

inline void evaluate_pim_asis(const Project& project, GateEvaluation& gate) {
  evaluate_model_cell(project, {Layer::Pim, Stage::AsIs}, "GATE-PIM-ASIS-MODEL", gate);
}

inline void evaluate_pim_transformation(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Pim, Stage::Transformation};
  const CellContent& content = project.cell(cell);
  if (!content.notes || content.notes->guidelines.empty())
    gate.block(make_error("GATE-PIM-TRANSFORMATION-GUIDELINES", cell,
                          "pim/transformation/notes",
                          "transformation notes need at least one guideline"));
  if (!content.notes || content.notes->organizational_units.empty())
    gate.block(make_error("GATE-PIM-TRANSFORMATION-ORGUNITS", cell,
                          "pim/transformation/notes",
                          "transformation notes need at least one organizational unit"));
}

inline void evaluate_pim_tobe(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Pim, Stage::ToBe};
  const CellContent& content = project.cell(cell);
  evaluate_model_cell(project, cell, "GATE-PIM-TOBE-MODEL", gate);
  if (!content.use_cases)
    gate.block(make_error("GATE-PIM-TOBE-USECASES", cell, "pim/tobe/use_cases",
                          "derived use cases are missing"));
  if (!content.skeleton)
    gate.block(make_error("GATE-PIM-TOBE-SKELETON", cell, "pim/tobe/class_skeleton",
                          "derived class skeleton is missing"));
  gate.require_clean(run_derived_rules(project));
  evaluate_signoff(project, cell, "GATE-PIM-TOBE-SIGNOFF", gate);
}

inline void evaluate_psm_asis(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Psm, Stage::AsIs};
  const CellContent& content = project.cell(cell);
  if (!content.inventory || content.inventory->empty()) {
    gate.block(make_error("GATE-PSM-ASIS-INVENTORY", cell, "psm/asis/inventory",
                          "legacy data inventory needs at least one entry"));
    return;
  }
  gate.require_clean(validate_inventory(*content.inventory));
}

inline void evaluate_psm_transformation(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Psm, Stage::Transformation};
  const CellContent& content = project.cell(cell);
  if (!content.platform)
    gate.block(make_error("GATE-PSM-TRANSFORMATION-PLATFORM", cell,
                          "psm/transformation/platform", "platform choice is missing"));
  else
    gate.require_clean(validate_platform(*content.platform));

  if (!content.migration) {
    gate.block(make_error("GATE-PSM-TRANSFORMATION-MIGRATION", cell,
                          "psm/transformation/migration", "migration plan is missing"));
    return;
  }
  const auto inventory = project.cell({Layer::Psm, Stage::AsIs})
                             .inventory.value_or(std::vector<DataInventoryEntry>{});
  if (const OpaalLexicon* lex = project.lexicon(Stage::ToBe)) {
    gate.require_clean(validate_migration_plan(*content.migration, inventory, *lex));
  } else {
    // No ToBe lexicon yet: check the plan's shape, skip target resolution.
    auto findings = validate_migration_plan(*content.migration, inventory, OpaalLexicon{});
    std::erase_if(findings,
                  [](const Diagnostic& d) { return d.code == "MIG-UNKNOWN-TARGET"; });
    gate.require_clean(std::move(findings));
  }
}

inline void evaluate_psm_tobe(const Project& project, GateEvaluation& gate) {
  const CellId cell{Layer::Psm, Stage::ToBe};
  const CellContent& content = project.cell(cell);
  if (!content.process) {
    gate.block(make_error("GATE-PSM-TOBE-MODEL", cell, "psm/tobe/process",
                          "ToBe PSM process model is missing"));
    return;
  }
  const ProcessModel& model = *content.process;
  auto structure = validate_structure(model);
  const bool structure_clean = !has_errors(structure);
  gate.require_clean(std::move(structure));
  gate.require_clean(run_model_rules(project, cell));

  auto executable = check_executable(model);
  const bool executable_clean = !has_errors(executable);
  gate.require_clean(std::move(executable));

  if (structure_clean && executable_clean) {
    try {
      (void)export_bpmn(model);
    } catch (const std::exception& e) {
      gate.block(make_error("GATE-PSM-TOBE-EXPORT", cell, "psm/tobe/process",
                            std::string("BPMN export failed: ") + e.what()));
    }
    SimConfig config;
    config.max_states = project.settings.sim_max_states;
    SimReport report = explore(model, config);
    if (report.outcome != SimOutcome::ProperCompletion)
      gate.block(make_error("GATE-PSM-TOBE-SIMULATION", cell, "psm/tobe/process",
                            "exhaustive simulation reports " +
                                std::string(to_string(report.outcome)) +
                                " instead of proper completion"));
  }
}

}  // namespace gate_detail

// Evaluates the cell's gate checklist plus every validator scoped to the
// cell; pure over the loaded snapshot.
inline CellStatus cell_status(const Project& project, CellId cell) {
  CellStatus status;
  const CellContent& content = project.cell(cell);

  status.diagnostics = content.artifact_diagnostics;
  if (cell == CellId{Layer::Cim, Stage::Transformation})
    for (const auto& d : project.manifest_diagnostics) status.diagnostics.push_back(d);

  if (!content.any_artifact_present) {
    status.state = CellState::Empty;
    sort_diagnostics(status.diagnostics);
    return status;
  }

  gate_detail::GateEvaluation gate;
  // Artifact parse errors always block: the checklists assume parseable files.
  if (has_errors(content.artifact_diagnostics)) gate.blocked = true;

  switch (cell.index()) {
    case 0: gate_detail::evaluate_cim_asis(project, gate); break;
    case 1: gate_detail::evaluate_cim_transformation(project, gate); break;
    case 2: gate_detail::evaluate_cim_tobe(project, gate); break;
    case 3: gate_detail::evaluate_pim_asis(project, gate); break;
    case 4: gate_detail::evaluate_pim_transformation(project, gate); break;
    case 5: gate_detail::evaluate_pim_tobe(project, gate); break;
    case 6: gate_detail::evaluate_psm_asis(project, gate); break;
    case 7: gate_detail::evaluate_psm_transformation(project, gate); break;
    case 8: gate_detail::evaluate_psm_tobe(project, gate); break;
  }

  for (auto& d : gate.diagnostics) status.diagnostics.push_back(std::move(d));
  sort_diagnostics(status.diagnostics);
  status.state = gate.blocked ? CellState::Draft : CellState::Ready;
  return status;
}

// First cell in row-major order whose gate is not satisfied; nullopt when
// the whole matrix is Ready. Advisory only, nothing is ever locked.
inline std::optional<CellId> next_step(const Project& project) {
  for (const CellId cell : all_cells()) {
    if (cell_status(project, cell).state != CellState::Ready) return cell;
  }
  return std::nullopt;
}

struct ProjectReport {
  std::array<CellStatus, 9> cells;
  std::optional<CellId> next;  // nullopt = Done

  bool all_ready() const {
    for (const auto& status : cells)
      if (status.state != CellState::Ready) return false;
    return true;
  }

  bool has_blocking_cell() const {
    for (const auto& status : cells)
      if (status.state == CellState::Draft) return true;
    return false;
  }

  std::vector<Diagnostic> all_diagnostics() const {
    std::vector<Diagnostic> out;
    for (const auto& status : cells)
      for (const auto& d : status.diagnostics) out.push_back(d);
    sort_diagnostics(out);
    return out;
  }
};

inline ProjectReport evaluate_project(const Project& project) {
  ProjectReport report;
  for (const CellId cell : all_cells()) report.cells[cell.index()] = cell_status(project, cell);
  for (const CellId cell : all_cells()) {
    if (report.cells[cell.index()].state != CellState::Ready) {
      report.next = cell;
      break;
    }
  }
  return report;
}

// Stage CRUDA built from the stage's most refined model.
inline std::optional<CrudaResult> project_cruda(const Project& project, Stage stage) {
  const OpaalLexicon* lex = project.lexicon(stage);
  const ProcessModel* model = project.canonical_model(stage);
  if (!lex || !model) return std::nullopt;
  std::vector<ProcessModel> models{*model};
  return derive_cruda(models, *lex);
}

}  // namespace easinnova
