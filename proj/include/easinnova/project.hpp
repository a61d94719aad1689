#pragma once

// Project snapshot: the project.json manifest plus the nine cell
// directories, loaded in one pass into an immutable value. Validators and
// gates run over the snapshot; only init_project writes to disk here.

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "easinnova/analysis.hpp"
#include "easinnova/diagnostics.hpp"
#include "easinnova/lexicon.hpp"
#include "easinnova/matrix.hpp"
#include "easinnova/process.hpp"
#include "easinnova/transition.hpp"

namespace easinnova {

struct ProjectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProjectSettings {
  std::optional<bool> gerund_lint_asis;
  std::optional<bool> gerund_lint_tobe;
  std::size_t sim_max_states = 100000;

  LexiconValidationSettings lexicon_settings(Stage stage) const {
    LexiconValidationSettings s = default_lexicon_settings(stage);
    if (stage == Stage::AsIs && gerund_lint_asis) s.gerund_lint = *gerund_lint_asis;
    if (stage == Stage::ToBe && gerund_lint_tobe) s.gerund_lint = *gerund_lint_tobe;
    return s;
  }
};

struct ActorSignoff {
  std::string name;
  bool signed_off = false;
};

// PIM-Transformation notes: reorganization guidelines plus the declared
// organizational units (lane and pool names may resolve against these).
struct TransformationNotes {
  std::vector<std::string> guidelines;
  std::vector<std::string> organizational_units;
};

inline std::pair<std::optional<TransformationNotes>, std::vector<Diagnostic>> parse_notes(
    const nlohmann::json& doc) {
  std::vector<Diagnostic> diags;
  const CellId cell{Layer::Pim, Stage::Transformation};
  if (!doc.is_object()) {
    diags.push_back(make_error("NOTES-PARSE", cell, "pim/transformation/notes",
                               "notes document is not a JSON object"));
    return {std::nullopt, diags};
  }
  TransformationNotes notes;
  if (doc.contains("guidelines") && doc["guidelines"].is_array())
    for (const auto& g : doc["guidelines"])
      if (g.is_string()) notes.guidelines.push_back(g.get<std::string>());
  if (doc.contains("organizational_units") && doc["organizational_units"].is_array())
    for (const auto& u : doc["organizational_units"])
      if (u.is_string()) notes.organizational_units.push_back(u.get<std::string>());
  return {notes, diags};
}

inline std::pair<std::vector<UseCase>, std::vector<Diagnostic>> parse_use_cases(
    const nlohmann::json& doc) {
  std::vector<UseCase> ucs;
  std::vector<Diagnostic> diags;
  const CellId cell{Layer::Pim, Stage::ToBe};
  if (!doc.is_object() || !doc.contains("use_cases") || !doc["use_cases"].is_array()) {
    diags.push_back(make_error("UC-PARSE", cell, "pim/tobe/use_cases",
                               "use-case document must contain a 'use_cases' array"));
    return {ucs, diags};
  }
  for (const auto& entry : doc["use_cases"]) {
    if (!entry.is_object() || !entry.contains("actor") || !entry["actor"].is_string() ||
        !entry.contains("action") || !entry["action"].is_string()) {
      diags.push_back(make_error("UC-PARSE", cell, "pim/tobe/use_cases",
                                 "use-case entry needs string 'actor' and 'action'"));
      continue;
    }
    ucs.push_back({entry["actor"].get<std::string>(), entry["action"].get<std::string>()});
  }
  return {ucs, diags};
}

inline std::pair<std::optional<ClassModelSkeleton>, std::vector<Diagnostic>> parse_skeleton(
    const nlohmann::json& doc) {
  std::vector<Diagnostic> diags;
  const CellId cell{Layer::Pim, Stage::ToBe};
  if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array()) {
    diags.push_back(make_error("SKEL-PARSE", cell, "pim/tobe/class_skeleton",
                               "class-skeleton document must contain a 'classes' array"));
    return {std::nullopt, diags};
  }
  ClassModelSkeleton skeleton;
  for (const auto& cj : doc["classes"]) {
    if (!cj.is_object() || !cj.contains("name") || !cj["name"].is_string()) {
      diags.push_back(make_error("SKEL-PARSE", cell, "pim/tobe/class_skeleton",
                                 "class entry needs a string 'name'"));
      continue;
    }
    SkeletonClass c;
    c.name = cj["name"].get<std::string>();
    if (cj.contains("attributes") && cj["attributes"].is_array())
      for (const auto& a : cj["attributes"])
        if (a.is_string()) c.attributes.push_back(a.get<std::string>());
    skeleton.classes.push_back(std::move(c));
  }
  if (doc.contains("associations") && doc["associations"].is_array()) {
    for (const auto& aj : doc["associations"]) {
      if (!aj.is_object() || !aj.contains("source") || !aj["source"].is_string() ||
          !aj.contains("target") || !aj["target"].is_string()) {
        diags.push_back(make_error("SKEL-PARSE", cell, "pim/tobe/class_skeleton",
                                   "association entry needs string 'source' and 'target'"));
        continue;
      }
      Association a;
      a.source = aj["source"].get<std::string>();
      a.target = aj["target"].get<std::string>();
      if (aj.contains("label") && aj["label"].is_string())
        a.label = aj["label"].get<std::string>();
      skeleton.associations.push_back(std::move(a));
    }
  }
  return {skeleton, diags};
}

// Everything a cell directory may hold; only the slots relevant to the cell
// are ever filled.
struct CellContent {
  bool any_artifact_present = false;
  std::vector<Diagnostic> artifact_diagnostics;  // parse errors, unknown files

  std::optional<std::string> narrative;
  std::optional<OpaalLexicon> lexicon;
  std::optional<std::vector<MotivationRecord>> motivations;
  std::optional<InnovationStatement> statement;
  std::optional<std::vector<StrategyRecord>> strategies;
  std::optional<std::vector<SolutionRecord>> solutions;
  std::optional<TransformationNotes> notes;
  std::optional<ProcessModel> process;
  std::optional<std::vector<UseCase>> use_cases;
  std::optional<ClassModelSkeleton> skeleton;
  std::optional<std::vector<DataInventoryEntry>> inventory;
  std::optional<PlatformChoice> platform;
  std::optional<MigrationPlan> migration;
};

struct Project {
  std::string name;
  std::filesystem::path root;
  ProjectSettings settings;
  std::vector<ActorSignoff> actors_registry;
  std::array<CellContent, 9> cells;
  std::vector<Diagnostic> manifest_diagnostics;

  const CellContent& cell(CellId id) const { return cells[id.index()]; }
  CellContent& cell(CellId id) { return cells[id.index()]; }

  const OpaalLexicon* lexicon(Stage stage) const {
    const auto& content = cell({Layer::Cim, stage});
    return content.lexicon ? &*content.lexicon : nullptr;
  }

  // Most refined process model of a stage: AsIs lives at PIM, ToBe at PSM
  // once enriched.
  const ProcessModel* canonical_model(Stage stage) const {
    if (stage == Stage::ToBe) {
      if (const auto& psm = cell({Layer::Psm, Stage::ToBe}).process) return &*psm;
      if (const auto& pim = cell({Layer::Pim, Stage::ToBe}).process) return &*pim;
      return nullptr;
    }
    const auto& pim = cell({Layer::Pim, Stage::AsIs}).process;
    return pim ? &*pim : nullptr;
  }

  std::vector<const ProcessModel*> models_of_stage(Stage stage) const {
    std::vector<const ProcessModel*> out;
    for (Layer layer : {Layer::Pim, Layer::Psm}) {
      if (const auto& m = cell({layer, stage}).process) out.push_back(&*m);
    }
    return out;
  }

  const std::vector<std::string>* organizational_units() const {
    const auto& notes = cell({Layer::Pim, Stage::Transformation}).notes;
    return notes ? &notes->organizational_units : nullptr;
  }
};

namespace detail {

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

inline std::optional<nlohmann::json> parse_json_file(const std::filesystem::path& path,
                                                     const std::string& code, CellId cell,
                                                     const std::string& subject,
                                                     std::vector<Diagnostic>& diags) {
  auto content = read_file(path);
  if (!content) {
    diags.push_back(make_error(code, cell, subject, "file is not readable"));
    return std::nullopt;
  }
  nlohmann::json doc = nlohmann::json::parse(*content, nullptr, false);
  if (doc.is_discarded()) {
    diags.push_back(make_error(code, cell, subject, "file is not valid JSON"));
    return std::nullopt;
  }
  return doc;
}

inline void append(std::vector<Diagnostic>& into, std::vector<Diagnostic> from) {
  for (auto& d : from) into.push_back(std::move(d));
}

}  // namespace detail

inline Project load_project(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  Project project;
  project.root = root;

  const fs::path manifest_path = root / "project.json";
  auto manifest_text = detail::read_file(manifest_path);
  if (!manifest_text)
    throw ProjectError("no project manifest at " + manifest_path.string());
  nlohmann::json manifest = nlohmann::json::parse(*manifest_text, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object())
    throw ProjectError("project manifest is not a JSON object: " + manifest_path.string());

  if (manifest.contains("name") && manifest["name"].is_string())
    project.name = manifest["name"].get<std::string>();
  if (manifest.contains("settings") && manifest["settings"].is_object()) {
    const auto& s = manifest["settings"];
    if (s.contains("gerund_lint_asis") && s["gerund_lint_asis"].is_boolean())
      project.settings.gerund_lint_asis = s["gerund_lint_asis"].get<bool>();
    if (s.contains("gerund_lint_tobe") && s["gerund_lint_tobe"].is_boolean())
      project.settings.gerund_lint_tobe = s["gerund_lint_tobe"].get<bool>();
    if (s.contains("sim_max_states") && s["sim_max_states"].is_number_unsigned())
      project.settings.sim_max_states = s["sim_max_states"].get<std::size_t>();
  }
  if (manifest.contains("actors_registry") && manifest["actors_registry"].is_array()) {
    std::set<std::string> seen;
    for (const auto& entry : manifest["actors_registry"]) {
      if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string())
        continue;
      ActorSignoff actor;
      actor.name = entry["name"].get<std::string>();
      if (entry.contains("signed_off") && entry["signed_off"].is_boolean())
        actor.signed_off = entry["signed_off"].get<bool>();
      if (!seen.insert(actor.name).second) {
        project.manifest_diagnostics.push_back(
            make_error("REG-DUP", CellId{Layer::Cim, Stage::Transformation},
                       "project/actors_registry",
                       "duplicate registry actor '" + actor.name + "'"));
        continue;
      }
      project.actors_registry.push_back(std::move(actor));
    }
  }

  for (const CellId cell_id : all_cells()) {
    CellContent& content = project.cell(cell_id);
    const fs::path dir = root / std::string(to_string(cell_id.layer)) /
                         std::string(to_string(cell_id.stage));
    if (!fs::exists(dir)) continue;

    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string filename = entry.path().filename().string();
      const std::string subject = cell_id.path() + "/" + filename;
      auto& diags = content.artifact_diagnostics;
      const Layer layer = cell_id.layer;
      const Stage stage = cell_id.stage;
      bool known = false;

      if (layer == Layer::Cim && stage != Stage::Transformation) {
        if (filename == "narrative.md") {
          known = true;
          content.narrative = detail::read_file(entry.path()).value_or("");
        } else if (filename == "lexicon.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "OPAAL-PARSE", cell_id,
                                             cell_id.path() + "/lexicon", diags);
          if (doc) {
            auto parsed = parse_lexicon(*doc);
            if (parsed.lexicon.stage != stage) {
              diags.push_back(make_error("OPAAL-PARSE", cell_id, cell_id.path() + "/lexicon",
                                         "lexicon stage does not match its cell"));
              parsed.lexicon.stage = stage;
            }
            detail::append(diags, std::move(parsed.diagnostics));
            content.lexicon = std::move(parsed.lexicon);
          }
        }
      }
      if (layer == Layer::Cim && stage == Stage::Transformation) {
        if (filename == "motivations.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "AN-PARSE", cell_id,
                                             "cim/transformation/motivations", diags);
          if (doc) {
            auto [records, parse_diags] = parse_motivations(*doc);
            detail::append(diags, std::move(parse_diags));
            content.motivations = std::move(records);
          }
        } else if (filename == "statement.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "AN-PARSE", cell_id,
                                             "cim/transformation/statement", diags);
          if (doc) {
            auto [statement, parse_diags] = parse_statement(*doc);
            detail::append(diags, std::move(parse_diags));
            content.statement = statement;
          }
        } else if (filename == "strategies.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "AN-PARSE", cell_id,
                                             "cim/transformation/strategies", diags);
          if (doc) {
            auto [records, parse_diags] = parse_strategies(*doc);
            detail::append(diags, std::move(parse_diags));
            content.strategies = std::move(records);
          }
        } else if (filename == "solutions.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "AN-PARSE", cell_id,
                                             "cim/transformation/solutions", diags);
          if (doc) {
            auto [records, parse_diags] = parse_solutions(*doc);
            detail::append(diags, std::move(parse_diags));
            content.solutions = std::move(records);
          }
        }
      }
      if ((layer == Layer::Pim && stage != Stage::Transformation) ||
          (layer == Layer::Psm && stage == Stage::ToBe)) {
        if (filename == "process.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "PROC-PARSE", cell_id,
                                             cell_id.path() + "/process", diags);
          if (doc) {
            auto parsed = parse_process_model(*doc);
            const Maturity expected = layer == Layer::Pim ? Maturity::Pim : Maturity::Psm;
            if (parsed.model.stage != stage || parsed.model.maturity != expected) {
              diags.push_back(make_error("PROC-PARSE", cell_id, cell_id.path() + "/process",
                                         "process stage/maturity does not match its cell"));
              parsed.model.stage = stage;
              parsed.model.maturity = expected;
            }
            detail::append(diags, std::move(parsed.diagnostics));
            content.process = std::move(parsed.model);
          }
        }
      }
      if (layer == Layer::Pim && stage == Stage::Transformation && filename == "notes.json") {
        known = true;
        auto doc = detail::parse_json_file(entry.path(), "NOTES-PARSE", cell_id,
                                           "pim/transformation/notes", diags);
        if (doc) {
          auto [notes, parse_diags] = parse_notes(*doc);
          detail::append(diags, std::move(parse_diags));
          content.notes = notes;
        }
      }
      if (layer == Layer::Pim && stage == Stage::ToBe) {
        if (filename == "use_cases.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "UC-PARSE", cell_id,
                                             "pim/tobe/use_cases", diags);
          if (doc) {
            auto [ucs, parse_diags] = parse_use_cases(*doc);
            detail::append(diags, std::move(parse_diags));
            content.use_cases = std::move(ucs);
          }
        } else if (filename == "class_skeleton.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "SKEL-PARSE", cell_id,
                                             "pim/tobe/class_skeleton", diags);
          if (doc) {
            auto [skeleton, parse_diags] = parse_skeleton(*doc);
            detail::append(diags, std::move(parse_diags));
            content.skeleton = skeleton;
          }
        }
      }
      if (layer == Layer::Psm && stage == Stage::AsIs && filename == "inventory.json") {
        known = true;
        auto doc = detail::parse_json_file(entry.path(), "INV-PARSE", cell_id,
                                           "psm/asis/inventory", diags);
        if (doc) {
          auto [entries, parse_diags] = parse_inventory(*doc);
          detail::append(diags, std::move(parse_diags));
          content.inventory = std::move(entries);
        }
      }
      if (layer == Layer::Psm && stage == Stage::Transformation) {
        if (filename == "platform.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "PLAT-PARSE", cell_id,
                                             "psm/transformation/platform", diags);
          if (doc) {
            auto [choice, parse_diags] = parse_platform(*doc);
            detail::append(diags, std::move(parse_diags));
            content.platform = choice;
          }
        } else if (filename == "migration.json") {
          known = true;
          auto doc = detail::parse_json_file(entry.path(), "MIG-PARSE", cell_id,
                                             "psm/transformation/migration", diags);
          if (doc) {
            auto [plan, parse_diags] = parse_migration_plan(*doc);
            detail::append(diags, std::move(parse_diags));
            content.migration = std::move(plan);
          }
        }
      }

      if (known) {
        content.any_artifact_present = true;
      } else {
        content.artifact_diagnostics.push_back(
            make_info("FILE-UNKNOWN", cell_id, subject, "unknown file ignored"));
      }
    }
    sort_diagnostics(content.artifact_diagnostics);
  }

  return project;
}

// Creates the on-disk skeleton: manifest plus the nine empty cell
// directories. Fails if the target already holds a project.
inline Project init_project(const std::string& name, const std::filesystem::path& target) {
  namespace fs = std::filesystem;
  if (fs::exists(target / "project.json"))
    throw ProjectError("target is already initialized: " + (target / "project.json").string());
  std::error_code ec;
  fs::create_directories(target, ec);
  if (ec) throw ProjectError("cannot create target directory: " + target.string());
  for (const CellId cell : all_cells()) {
    fs::create_directories(target / std::string(to_string(cell.layer)) /
                               std::string(to_string(cell.stage)),
                           ec);
    if (ec) throw ProjectError("cannot create cell directory: " + cell.path());
  }
  nlohmann::ordered_json manifest;
  manifest["name"] = name;
  manifest["settings"] = nlohmann::ordered_json::object();
  manifest["actors_registry"] = nlohmann::ordered_json::array();
  std::ofstream out(target / "project.json", std::ios::binary);
  if (!out) throw ProjectError("target is not writable: " + target.string());
  out << manifest.dump(2) << '\n';
  out.close();
  return load_project(target);
}

}  // namespace easinnova
