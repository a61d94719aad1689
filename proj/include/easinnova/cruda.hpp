#pragma once

// CRUDA matrix: Process terms (task names, aggregated across pools) against
// Object terms, each cell the set of lifecycle operations the tasks declare.

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "easinnova/diagnostics.hpp"
#include "easinnova/lexicon.hpp"
#include "easinnova/process.hpp"

namespace easinnova {

struct CrudaMatrix {
  Stage stage = Stage::AsIs;
  CellId source_cell{Layer::Pim, Stage::AsIs};  // cell the effects came from
  std::vector<std::string> processes;           // rows, sorted
  std::vector<std::string> objects;             // columns, sorted
  std::map<std::pair<std::string, std::string>, std::set<LifecycleOp>> cells;

  const std::set<LifecycleOp>* cell(const std::string& process,
                                    const std::string& object) const {
    auto it = cells.find({process, object});
    return it == cells.end() ? nullptr : &it->second;
  }

  bool column_has(const std::string& object, LifecycleOp op) const {
    for (const auto& [key, ops] : cells)
      if (key.second == object && ops.count(op)) return true;
    return false;
  }
};

struct CrudaResult {
  CrudaMatrix matrix;
  std::vector<Diagnostic> diagnostics;
};

// Rows aggregate tasks by name across pools and models; columns are the
// Object terms that carry at least one effect. Effects on names that are
// not declared Object terms are errors and stay out of the matrix.
inline CrudaResult derive_cruda(std::span<const ProcessModel> models,
                                const OpaalLexicon& lex) {
  CrudaResult result;
  CrudaMatrix& m = result.matrix;
  m.stage = lex.stage;
  if (!models.empty()) m.source_cell = models.front().cell();

  std::set<std::string> row_set, col_set, unknown_reported;
  for (const auto& model : models) {
    for (const auto& pool : model.pools) {
      for (const auto& node : pool.nodes) {
        if (node.kind != NodeKind::Task) continue;
        const std::string row = node.name.empty() ? node.id : node.name;
        for (const auto& effect : node.effects) {
          if (!lex.has(effect.object, TermCategory::Object)) {
            if (unknown_reported.insert(effect.object).second) {
              result.diagnostics.push_back(make_error(
                  "CRUD-UNKNOWN-OBJ", model.cell(), model.subject(),
                  "effect on '" + effect.object + "' which is not a declared Object term"));
            }
            continue;
          }
          row_set.insert(row);
          col_set.insert(effect.object);
          m.cells[{row, effect.object}].insert(effect.op);
        }
      }
    }
  }
  m.processes.assign(row_set.begin(), row_set.end());
  m.objects.assign(col_set.begin(), col_set.end());
  sort_diagnostics(result.diagnostics);
  return result;
}

// Lifecycle completeness per object column: something must Create it; a
// created object should be Read somewhere; and its lifecycle should close
// with a Delete or an Archive.
inline std::vector<Diagnostic> check_cruda_completeness(const CrudaMatrix& m) {
  std::vector<Diagnostic> out;
  const std::string subject = m.source_cell.path() + "/cruda";
  for (const auto& object : m.objects) {
    const bool created = m.column_has(object, LifecycleOp::Create);
    if (!created)
      out.push_back(make_error("CRUD-NO-CREATE", m.source_cell, subject,
                               "object '" + object + "' is never created"));
    if (created && !m.column_has(object, LifecycleOp::Read))
      out.push_back(make_warning("CRUD-NO-READ", m.source_cell, subject,
                                 "object '" + object + "' is created but never read"));
    if (!m.column_has(object, LifecycleOp::Delete) &&
        !m.column_has(object, LifecycleOp::Archive))
      out.push_back(make_warning("CRUD-NO-DA", m.source_cell, subject,
                                 "object '" + object + "' is neither deleted nor archived"));
  }
  sort_diagnostics(out);
  return out;
}

inline std::string cell_ops_string(const std::set<LifecycleOp>& ops) {
  std::string s;
  for (LifecycleOp op : {LifecycleOp::Create, LifecycleOp::Read, LifecycleOp::Update,
                         LifecycleOp::Delete, LifecycleOp::Archive})
    if (ops.count(op)) s += static_cast<char>(op);
  return s;
}

inline std::string render_cruda_text(const CrudaMatrix& m) {
  std::size_t first = 0;
  for (const auto& p : m.processes) first = std::max(first, p.size());
  std::vector<std::size_t> widths;
  for (const auto& o : m.objects) widths.push_back(std::max<std::size_t>(o.size(), 5));

  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };

  std::string out = pad("", first);
  for (std::size_t i = 0; i < m.objects.size(); ++i) out += "  " + pad(m.objects[i], widths[i]);
  out += '\n';
  for (const auto& p : m.processes) {
    out += pad(p, first);
    for (std::size_t i = 0; i < m.objects.size(); ++i) {
      const auto* ops = m.cell(p, m.objects[i]);
      out += "  " + pad(ops ? cell_ops_string(*ops) : "-", widths[i]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json cruda_to_json(const CrudaMatrix& m) {
  nlohmann::ordered_json doc;
  doc["stage"] = std::string(to_string(m.stage));
  doc["processes"] = m.processes;
  doc["objects"] = m.objects;
  doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& [key, ops] : m.cells) {
    doc["cells"].push_back({{"process", key.first},
                            {"object", key.second},
                            {"ops", cell_ops_string(ops)}});
  }
  return doc;
}

}  // namespace easinnova
