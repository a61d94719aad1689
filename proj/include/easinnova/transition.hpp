#pragma once

// PSM AsIs/Transformation artifacts: the legacy data inventory, the platform
// decision record, and the data migration plan. Migration is validated as a
// plan, never executed.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "easinnova/diagnostics.hpp"
#include "easinnova/lexicon.hpp"
#include "easinnova/matrix.hpp"

namespace easinnova {

struct DataInventoryEntry {
  std::string entity;
  std::string store;    // where it lives today
  bool critical = false;
};

struct PlatformChoice {
  std::string platform;
  std::string rationale;
  std::vector<std::string> shortlist;
};

struct MigrationMapping {
  enum class Disposition { MapTo, Drop };
  std::string legacy_entity;
  Disposition disposition = Disposition::MapTo;
  std::string target;  // ToBe object term for MapTo
  std::string reason;  // justification for Drop
};

struct MigrationPlan {
  std::vector<MigrationMapping> mappings;
};

namespace detail {
inline const CellId kPsmAsIs{Layer::Psm, Stage::AsIs};
inline const CellId kPsmTransformation{Layer::Psm, Stage::Transformation};
}  // namespace detail

inline std::vector<Diagnostic> validate_inventory(
    const std::vector<DataInventoryEntry>& inventory) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const auto& entry : inventory) {
    if (!seen.insert(entry.entity).second)
      out.push_back(make_error("INV-DUP", detail::kPsmAsIs, "psm/asis/inventory",
                               "duplicate inventory entity '" + entry.entity + "'"));
  }
  sort_diagnostics(out);
  return out;
}

inline std::vector<Diagnostic> validate_platform(const PlatformChoice& choice) {
  std::vector<Diagnostic> out;
  bool listed = std::find(choice.shortlist.begin(), choice.shortlist.end(),
                          choice.platform) != choice.shortlist.end();
  if (!listed)
    out.push_back(make_error("PLAT-SHORTLIST", detail::kPsmTransformation,
                             "psm/transformation/platform",
                             "selected platform '" + choice.platform +
                                 "' is not on the shortlist"));
  return out;
}

inline std::vector<Diagnostic> validate_migration_plan(
    const MigrationPlan& plan, const std::vector<DataInventoryEntry>& inventory,
    const OpaalLexicon& tobe_lexicon) {
  std::vector<Diagnostic> out;
  const std::string subject = "psm/transformation/migration";

  std::set<std::string> inventory_entities;
  std::map<std::string, bool> critical;
  for (const auto& entry : inventory) {
    inventory_entities.insert(entry.entity);
    critical[entry.entity] = entry.critical;
  }

  std::set<std::string> mapped;
  for (const auto& mapping : plan.mappings) {
    mapped.insert(mapping.legacy_entity);
    if (!inventory_entities.count(mapping.legacy_entity)) {
      out.push_back(make_error("MIG-UNKNOWN-ENTITY", detail::kPsmTransformation, subject,
                               "mapping references '" + mapping.legacy_entity +
                                   "' which is not in the data inventory"));
      continue;
    }
    if (mapping.disposition == MigrationMapping::Disposition::MapTo) {
      if (!tobe_lexicon.has(mapping.target, TermCategory::Object))
        out.push_back(make_error("MIG-UNKNOWN-TARGET", detail::kPsmTransformation, subject,
                                 "'" + mapping.legacy_entity + "' maps to '" + mapping.target +
                                     "' which is not a ToBe Object term"));
    } else if (critical[mapping.legacy_entity]) {
      out.push_back(make_warning("MIG-DROP-CRITICAL", detail::kPsmTransformation, subject,
                                 "critical entity '" + mapping.legacy_entity +
                                     "' is dropped by the migration plan"));
    }
  }
  for (const auto& entity : inventory_entities) {
    if (!mapped.count(entity))
      out.push_back(make_error("MIG-UNMAPPED", detail::kPsmTransformation, subject,
                               "inventory entity '" + entity + "' has no migration mapping"));
  }
  sort_diagnostics(out);
  return out;
}

// ---- JSON artifact formats ----

inline std::pair<std::vector<DataInventoryEntry>, std::vector<Diagnostic>> parse_inventory(
    const nlohmann::json& doc) {
  std::vector<DataInventoryEntry> entries;
  std::vector<Diagnostic> diags;
  const std::string subject = "psm/asis/inventory";
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    diags.push_back(make_error("INV-PARSE", detail::kPsmAsIs, subject,
                               "inventory document must contain an 'entries' array"));
    return {entries, diags};
  }
  for (const auto& entry : doc["entries"]) {
    if (!entry.is_object() || !entry.contains("entity") || !entry["entity"].is_string()) {
      diags.push_back(make_error("INV-PARSE", detail::kPsmAsIs, subject,
                                 "inventory entry needs a string 'entity'"));
      continue;
    }
    DataInventoryEntry e;
    e.entity = entry["entity"].get<std::string>();
    if (entry.contains("store") && entry["store"].is_string())
      e.store = entry["store"].get<std::string>();
    if (entry.contains("critical") && entry["critical"].is_boolean())
      e.critical = entry["critical"].get<bool>();
    entries.push_back(std::move(e));
  }
  return {entries, diags};
}

inline std::pair<std::optional<PlatformChoice>, std::vector<Diagnostic>> parse_platform(
    const nlohmann::json& doc) {
  std::vector<Diagnostic> diags;
  const std::string subject = "psm/transformation/platform";
  if (!doc.is_object() || !doc.contains("platform") || !doc["platform"].is_string()) {
    diags.push_back(make_error("PLAT-PARSE", detail::kPsmTransformation, subject,
                               "platform document must contain a string 'platform'"));
    return {std::nullopt, diags};
  }
  PlatformChoice choice;
  choice.platform = doc["platform"].get<std::string>();
  if (doc.contains("rationale") && doc["rationale"].is_string())
    choice.rationale = doc["rationale"].get<std::string>();
  if (doc.contains("shortlist") && doc["shortlist"].is_array())
    for (const auto& item : doc["shortlist"])
      if (item.is_string()) choice.shortlist.push_back(item.get<std::string>());
  return {choice, diags};
}

inline std::pair<MigrationPlan, std::vector<Diagnostic>> parse_migration_plan(
    const nlohmann::json& doc) {
  MigrationPlan plan;
  std::vector<Diagnostic> diags;
  const std::string subject = "psm/transformation/migration";
  if (!doc.is_object() || !doc.contains("mappings") || !doc["mappings"].is_array()) {
    diags.push_back(make_error("MIG-PARSE", detail::kPsmTransformation, subject,
                               "migration document must contain a 'mappings' array"));
    return {plan, diags};
  }
  for (const auto& entry : doc["mappings"]) {
    if (!entry.is_object() || !entry.contains("legacy_entity") ||
        !entry["legacy_entity"].is_string()) {
      diags.push_back(make_error("MIG-PARSE", detail::kPsmTransformation, subject,
                                 "mapping entry needs a string 'legacy_entity'"));
      continue;
    }
    MigrationMapping m;
    m.legacy_entity = entry["legacy_entity"].get<std::string>();
    const bool has_map = entry.contains("map_to") && entry["map_to"].is_string();
    const bool has_drop = entry.contains("drop") && entry["drop"].is_string();
    if (has_map == has_drop) {
      diags.push_back(make_error("MIG-PARSE", detail::kPsmTransformation, subject,
                                 "mapping for '" + m.legacy_entity +
                                     "' needs exactly one of 'map_to' or 'drop'"));
      continue;
    }
    if (has_map) {
      m.disposition = MigrationMapping::Disposition::MapTo;
      m.target = entry["map_to"].get<std::string>();
    } else {
      m.disposition = MigrationMapping::Disposition::Drop;
      m.reason = entry["drop"].get<std::string>();
    }
    plan.mappings.push_back(std::move(m));
  }
  return {plan, diags};
}

}  // namespace easinnova
