#pragma once

// BPMN 2.0 interchange for PSM process models. Export is a pure function of
// the model with a fixed element/attribute order and a deterministic id
// scheme, so identical models produce identical bytes. Import maps the
// supported element subset back; everything else is reported, never
// silently dropped. validate_document checks a document against the OMG
// content-model rules for the emitted subset (element nesting, required
// attributes, NCName ids, document-wide id uniqueness, typed references).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "easinnova/diagnostics.hpp"
#include "easinnova/process.hpp"
#include "easinnova/xml.hpp"

namespace easinnova {

inline constexpr std::string_view kBpmnNamespace =
    "http://www.omg.org/spec/BPMN/20100524/MODEL";
inline constexpr std::string_view kXsiNamespace =
    "http://www.w3.org/2001/XMLSchema-instance";
inline constexpr std::string_view kHintsNamespace = "urn:easinnova:process-hints";

struct BpmnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BpmnExportOptions {
  // Opt-in engine hints: task effects as attributes in a vendor namespace.
  bool vendor_hints = false;
};

namespace bpmn_detail {

inline bool ncname_char(char c, bool first) {
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return true;
  if (first) return false;
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

inline std::string sanitize_ncname(const std::string& raw) {
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i)
    out += ncname_char(raw[i], out.empty()) ? raw[i] : '_';
  if (out.empty()) out = "_";
  return out;
}

inline bool is_ncname(const std::string& s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!ncname_char(s[i], i == 0)) return false;
  return true;
}

inline std::string task_element(ExecutionKind kind) {
  switch (kind) {
    case ExecutionKind::User: return "userTask";
    case ExecutionKind::ManualPassThrough: return "manualTask";
    case ExecutionKind::Automatic: return "serviceTask";
    case ExecutionKind::Unspecified: return "task";
  }
  return "task";
}

inline std::string effects_attribute(const std::vector<Effect>& effects) {
  std::string out;
  for (const auto& e : effects) {
    if (!out.empty()) out += ';';
    out += e.object + ":" + static_cast<char>(e.op);
  }
  return out;
}

inline std::vector<Effect> parse_effects_attribute(const std::string& value) {
  std::vector<Effect> effects;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto end = value.find(';', start);
    std::string item = value.substr(start, end == std::string::npos ? end : end - start);
    auto colon = item.rfind(':');
    if (colon != std::string::npos && colon + 2 == item.size()) {
      if (auto op = parse_lifecycle_op(item.substr(colon + 1)))
        effects.push_back({item.substr(0, colon), *op});
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return effects;
}

// Deterministic export ids: pool-indexed node ids reversible on import.
struct IdScheme {
  std::map<std::pair<int, std::string>, std::string> node_ids;
  std::set<std::string> taken;

  std::string allocate(std::string candidate) {
    std::string id = candidate;
    int suffix = 2;
    while (!taken.insert(id).second) id = candidate + "_" + std::to_string(suffix++);
    return id;
  }

  std::string node(int pool, const std::string& raw) {
    auto it = node_ids.find({pool, raw});
    if (it != node_ids.end()) return it->second;
    std::string id = allocate("n" + std::to_string(pool) + "_" + sanitize_ncname(raw));
    node_ids.emplace(std::make_pair(pool, raw), id);
    return id;
  }
};

inline std::string strip_node_prefix(const std::string& element_id) {
  if (element_id.size() > 1 && element_id[0] == 'n') {
    std::size_t i = 1;
    while (i < element_id.size() && std::isdigit(static_cast<unsigned char>(element_id[i])))
      ++i;
    if (i > 1 && i < element_id.size() && element_id[i] == '_' && i + 1 < element_id.size())
      return element_id.substr(i + 1);
  }
  return element_id;
}

}  // namespace bpmn_detail

// Serializes a PSM model whose tasks are all typed (check_executable clean).
inline std::string export_bpmn(const ProcessModel& model, const BpmnExportOptions& options = {}) {
  if (model.maturity != Maturity::Psm)
    throw BpmnError("export_bpmn expects a PSM-maturity model");
  {
    auto executable = check_executable(model);
    if (has_errors(executable))
      throw BpmnError("model is not executable: " + executable.front().message);
  }

  bpmn_detail::IdScheme ids;
  ids.taken.insert("Collaboration_1");

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<definitions xmlns=\"";
  out += kBpmnNamespace;
  out += "\" xmlns:xsi=\"";
  out += kXsiNamespace;
  out += "\"";
  if (options.vendor_hints) {
    out += " xmlns:ei=\"";
    out += kHintsNamespace;
    out += "\"";
  }
  out += " id=\"Definitions_";
  out += to_string(model.stage);
  out += "\" targetNamespace=\"urn:easinnova:collaboration\">\n";

  // Collaboration: one participant per pool, then the message flows.
  out += "  <collaboration id=\"Collaboration_1\">\n";
  std::map<std::string, int> pool_index;
  for (int p = 0; p < static_cast<int>(model.pools.size()); ++p) {
    pool_index[model.pools[p].actor] = p;
    out += "    <participant id=\"Participant_" + std::to_string(p) + "\" name=\"" +
           xml::escape_attribute(model.pools[p].actor) + "\" processRef=\"Process_" +
           std::to_string(p) + "\" />\n";
    ids.taken.insert("Participant_" + std::to_string(p));
    ids.taken.insert("Process_" + std::to_string(p));
  }
  for (int f = 0; f < static_cast<int>(model.message_flows.size()); ++f) {
    const MessageFlow& flow = model.message_flows[f];
    const int sp = pool_index.at(flow.source_pool);
    const int tp = pool_index.at(flow.target_pool);
    out += "    <messageFlow id=\"mf" + std::to_string(f) + "\"";
    if (!flow.name.empty()) out += " name=\"" + xml::escape_attribute(flow.name) + "\"";
    out += " sourceRef=\"" + ids.node(sp, flow.source) + "\" targetRef=\"" +
           ids.node(tp, flow.target) + "\" />\n";
  }
  out += "  </collaboration>\n";

  for (int p = 0; p < static_cast<int>(model.pools.size()); ++p) {
    const Pool& pool = model.pools[p];
    out += "  <process id=\"Process_" + std::to_string(p) + "\" name=\"" +
           xml::escape_attribute(pool.actor) + "\" isExecutable=\"true\">\n";

    if (!pool.lanes.empty()) {
      out += "    <laneSet id=\"LaneSet_" + std::to_string(p) + "\">\n";
      for (int l = 0; l < static_cast<int>(pool.lanes.size()); ++l) {
        out += "      <lane id=\"Lane_" + std::to_string(p) + "_" + std::to_string(l) +
               "\" name=\"" + xml::escape_attribute(pool.lanes[l]) + "\">\n";
        for (const auto& node : pool.nodes)
          if (node.lane == pool.lanes[l])
            out += "        <flowNodeRef>" + ids.node(p, node.id) + "</flowNodeRef>\n";
        out += "      </lane>\n";
      }
      out += "    </laneSet>\n";
    }

    // Flow ids are positional so a model without explicit flow ids still
    // exports deterministically.
    auto flow_id = [&](int index) {
      return "f" + std::to_string(p) + "_" + std::to_string(index);
    };
    auto default_flow_of = [&](const std::string& node_id) -> std::optional<int> {
      for (int i = 0; i < static_cast<int>(pool.sequence_flows.size()); ++i)
        if (pool.sequence_flows[i].source == node_id && pool.sequence_flows[i].is_default)
          return i;
      return std::nullopt;
    };
    std::set<std::string> message_sources;
    for (const auto& flow : model.message_flows)
      if (flow.source_pool == pool.actor) message_sources.insert(flow.source);

    for (const auto& node : pool.nodes) {
      const std::string id = ids.node(p, node.id);
      const std::string name_attr =
          node.name.empty() ? "" : " name=\"" + xml::escape_attribute(node.name) + "\"";
      switch (node.kind) {
        case NodeKind::StartNone:
          out += "    <startEvent id=\"" + id + "\"" + name_attr + " />\n";
          break;
        case NodeKind::StartMessage:
          out += "    <startEvent id=\"" + id + "\"" + name_attr + ">\n";
          out += "      <messageEventDefinition id=\"" + id + "_med\" />\n";
          out += "    </startEvent>\n";
          break;
        case NodeKind::End:
          if (message_sources.count(node.id)) {
            out += "    <endEvent id=\"" + id + "\"" + name_attr + ">\n";
            out += "      <messageEventDefinition id=\"" + id + "_med\" />\n";
            out += "    </endEvent>\n";
          } else {
            out += "    <endEvent id=\"" + id + "\"" + name_attr + " />\n";
          }
          break;
        case NodeKind::Task: {
          std::string hints;
          if (options.vendor_hints && !node.effects.empty())
            hints = " ei:effects=\"" +
                    xml::escape_attribute(bpmn_detail::effects_attribute(node.effects)) + "\"";
          out += "    <" + bpmn_detail::task_element(node.execution) + " id=\"" + id + "\"" +
                 name_attr + hints + " />\n";
          break;
        }
        case NodeKind::XorGateway: {
          std::string default_attr;
          if (auto def = default_flow_of(node.id))
            default_attr = " default=\"" + flow_id(*def) + "\"";
          out += "    <exclusiveGateway id=\"" + id + "\"" + name_attr + default_attr + " />\n";
          break;
        }
        case NodeKind::AndGateway:
          out += "    <parallelGateway id=\"" + id + "\"" + name_attr + " />\n";
          break;
        case NodeKind::CatchMessage:
          out += "    <intermediateCatchEvent id=\"" + id + "\"" + name_attr + ">\n";
          out += "      <messageEventDefinition id=\"" + id + "_med\" />\n";
          out += "    </intermediateCatchEvent>\n";
          break;
        case NodeKind::ThrowMessage:
          out += "    <intermediateThrowEvent id=\"" + id + "\"" + name_attr + ">\n";
          out += "      <messageEventDefinition id=\"" + id + "_med\" />\n";
          out += "    </intermediateThrowEvent>\n";
          break;
      }
    }

    for (int i = 0; i < static_cast<int>(pool.sequence_flows.size()); ++i) {
      const SequenceFlow& flow = pool.sequence_flows[i];
      out += "    <sequenceFlow id=\"" + flow_id(i) + "\" sourceRef=\"" +
             ids.node(p, flow.source) + "\" targetRef=\"" + ids.node(p, flow.target) + "\"";
      if (flow.condition.empty()) {
        out += " />\n";
      } else {
        out += ">\n";
        out += "      <conditionExpression xsi:type=\"tFormalExpression\">" +
               xml::escape_text(flow.condition) + "</conditionExpression>\n";
        out += "    </sequenceFlow>\n";
      }
    }
    out += "  </process>\n";
  }
  out += "</definitions>\n";
  return out;
}

struct BpmnImportResult {
  ProcessModel model;
  std::vector<Diagnostic> diagnostics;
};

inline BpmnImportResult import_bpmn(const std::string& document) {
  xml::Element root = xml::parse(document);  // throws XmlError when malformed
  xml::NamespaceScope scope;
  scope = scope.with(root);
  auto [root_ns, root_local] = scope.resolve(root.name);
  if (root_local != "definitions" || root_ns != kBpmnNamespace)
    throw BpmnError("document root is not a BPMN 2.0 definitions element (namespace '" +
                    root_ns + "')");

  BpmnImportResult result;
  ProcessModel& model = result.model;
  model.maturity = Maturity::Psm;
  model.stage = Stage::ToBe;
  if (auto id = root.attribute("id")) {
    if (*id == "Definitions_asis") model.stage = Stage::AsIs;
  }
  const CellId cell = model.cell();
  const std::string subject = model.subject();

  auto warn_unsupported = [&](const std::string& element) {
    result.diagnostics.push_back(make_warning("IO-UNSUPPORTED", cell, subject,
                                              "unsupported element '" + element +
                                                  "' skipped"));
  };
  auto warn_dangling = [&](const std::string& what) {
    result.diagnostics.push_back(
        make_warning("IO-DANGLING-REF", cell, subject, what + " skipped"));
  };

  struct ParsedProcess {
    std::string id;
    std::string name;
    Pool pool;                      // actor filled later from the participant
    std::set<std::string> node_ids; // element ids of kept nodes
  };
  std::vector<ParsedProcess> processes;

  struct ParticipantRef {
    std::string name;
    std::string process_ref;
  };
  std::vector<ParticipantRef> participants;
  struct RawMessageFlow {
    std::string source;
    std::string target;
    std::string name;
  };
  std::vector<RawMessageFlow> raw_message_flows;

  auto find_hint_attribute = [&](const xml::Element& element, const xml::NamespaceScope& ns,
                                 const std::string& local) -> std::optional<std::string> {
    for (const auto& [key, value] : element.attributes) {
      if (key == "xmlns" || key.rfind("xmlns:", 0) == 0) continue;
      auto colon = key.find(':');
      if (colon == std::string::npos) continue;
      auto [uri, attr_local] = ns.resolve(key);
      if (uri == kHintsNamespace && attr_local == local) return value;
    }
    return std::nullopt;
  };

  auto parse_process = [&](const xml::Element& element, const xml::NamespaceScope& outer) {
    ParsedProcess proc;
    proc.id = element.attribute("id").value_or("");
    proc.name = element.attribute("name").value_or("");
    xml::NamespaceScope ns = outer.with(element);

    struct LaneAssignment {
      std::string lane;
      std::string node_element_id;
    };
    std::vector<LaneAssignment> lane_assignments;
    std::vector<std::pair<SequenceFlow, std::string>> flows;  // flow + default marker id
    std::map<std::string, std::string> default_of_gateway;    // gateway elem id -> flow elem id
    std::map<std::string, std::string> flow_elem_ids;         // flow elem id position helper

    for (const auto& child : element.children) {
      xml::NamespaceScope child_ns = ns.with(child);
      auto [child_uri, local] = child_ns.resolve(child.name);
      if (child_uri != kBpmnNamespace) {
        warn_unsupported(child.name);
        continue;
      }
      auto has_message_def = [&](const xml::Element& event) {
        for (const auto& def : event.children) {
          auto [uri, def_local] = child_ns.with(event).resolve(def.name);
          if (uri == kBpmnNamespace && def_local == "messageEventDefinition") return true;
        }
        return false;
      };
      auto other_event_defs = [&](const xml::Element& event) {
        std::vector<std::string> defs;
        for (const auto& def : event.children) {
          auto [uri, def_local] = child_ns.with(event).resolve(def.name);
          if (uri == kBpmnNamespace && def_local != "messageEventDefinition" &&
              def_local.size() > 15 &&
              def_local.rfind("EventDefinition") == def_local.size() - 15)
            defs.push_back(def_local);
        }
        return defs;
      };

      Node node;
      node.id = bpmn_detail::strip_node_prefix(child.attribute("id").value_or(""));
      node.name = child.attribute("name").value_or("");
      bool is_node = true;

      if (local == "laneSet") {
        xml::NamespaceScope ls_ns = child_ns;
        for (const auto& lane : child.children) {
          auto [lane_uri, lane_local] = ls_ns.with(lane).resolve(lane.name);
          if (lane_uri != kBpmnNamespace || lane_local != "lane") {
            warn_unsupported(lane.name);
            continue;
          }
          const std::string lane_name = lane.attribute("name").value_or(
              lane.attribute("id").value_or(""));
          proc.pool.lanes.push_back(lane_name);
          for (const auto& ref : lane.children) {
            auto [ref_uri, ref_local] = ls_ns.with(lane).with(ref).resolve(ref.name);
            if (ref_uri == kBpmnNamespace && ref_local == "flowNodeRef")
              lane_assignments.push_back({lane_name, ref.text});
            else
              warn_unsupported(ref.name);
          }
        }
        continue;
      }
      if (local == "sequenceFlow") {
        SequenceFlow flow;
        flow.source = bpmn_detail::strip_node_prefix(child.attribute("sourceRef").value_or(""));
        flow.target = bpmn_detail::strip_node_prefix(child.attribute("targetRef").value_or(""));
        for (const auto& cond : child.children) {
          auto [cond_uri, cond_local] = child_ns.with(cond).resolve(cond.name);
          if (cond_uri == kBpmnNamespace && cond_local == "conditionExpression")
            flow.condition = cond.text;
        }
        flows.emplace_back(std::move(flow), child.attribute("id").value_or(""));
        continue;
      }

      if (local == "startEvent") {
        auto unsupported = other_event_defs(child);
        if (!unsupported.empty()) {
          warn_unsupported(unsupported.front());
          is_node = false;
        } else {
          node.kind = has_message_def(child) ? NodeKind::StartMessage : NodeKind::StartNone;
        }
      } else if (local == "endEvent") {
        node.kind = NodeKind::End;
        for (const auto& def : other_event_defs(child)) warn_unsupported(def);
      } else if (local == "task" || local == "userTask" || local == "manualTask" ||
                 local == "serviceTask") {
        node.kind = NodeKind::Task;
        if (local == "userTask") node.execution = ExecutionKind::User;
        if (local == "manualTask") node.execution = ExecutionKind::ManualPassThrough;
        if (local == "serviceTask") node.execution = ExecutionKind::Automatic;
        if (auto effects = find_hint_attribute(child, child_ns, "effects"))
          node.effects = bpmn_detail::parse_effects_attribute(*effects);
      } else if (local == "exclusiveGateway") {
        node.kind = NodeKind::XorGateway;
        if (auto def = child.attribute("default"))
          default_of_gateway[child.attribute("id").value_or("")] = *def;
      } else if (local == "parallelGateway") {
        node.kind = NodeKind::AndGateway;
      } else if (local == "intermediateCatchEvent" || local == "intermediateThrowEvent") {
        if (!has_message_def(child)) {
          auto defs = other_event_defs(child);
          warn_unsupported(defs.empty() ? local : defs.front());
          is_node = false;
        } else {
          node.kind = local == "intermediateCatchEvent" ? NodeKind::CatchMessage
                                                        : NodeKind::ThrowMessage;
        }
      } else {
        warn_unsupported(local);
        is_node = false;
      }

      if (is_node) {
        proc.pool.nodes.push_back(node);
        proc.node_ids.insert(child.attribute("id").value_or(""));
      }
    }

    // Lanes and defaults resolve against kept nodes only.
    for (const auto& assignment : lane_assignments) {
      const std::string node_id = bpmn_detail::strip_node_prefix(assignment.node_element_id);
      bool found = false;
      for (auto& node : proc.pool.nodes)
        if (node.id == node_id) {
          node.lane = assignment.lane;
          found = true;
        }
      if (!found) warn_dangling("lane reference to '" + assignment.node_element_id + "'");
    }
    for (auto& [flow, elem_id] : flows) {
      bool source_ok = false, target_ok = false;
      for (const auto& node : proc.pool.nodes) {
        if (node.id == flow.source) source_ok = true;
        if (node.id == flow.target) target_ok = true;
      }
      if (!source_ok || !target_ok) {
        warn_dangling("sequence flow '" + elem_id + "' referencing a skipped element");
        continue;
      }
      for (const auto& [gateway_elem, default_elem] : default_of_gateway) {
        if (default_elem == elem_id &&
            flow.source == bpmn_detail::strip_node_prefix(gateway_elem))
          flow.is_default = true;
      }
      proc.pool.sequence_flows.push_back(flow);
    }
    processes.push_back(std::move(proc));
  };

  for (const auto& child : root.children) {
    xml::NamespaceScope child_ns = scope.with(child);
    auto [uri, local] = child_ns.resolve(child.name);
    if (uri != kBpmnNamespace) {
      warn_unsupported(child.name);
      continue;
    }
    if (local == "collaboration") {
      for (const auto& item : child.children) {
        auto [item_uri, item_local] = child_ns.with(item).resolve(item.name);
        if (item_uri != kBpmnNamespace) {
          warn_unsupported(item.name);
          continue;
        }
        if (item_local == "participant") {
          participants.push_back({item.attribute("name").value_or(
                                      item.attribute("id").value_or("")),
                                  item.attribute("processRef").value_or("")});
        } else if (item_local == "messageFlow") {
          raw_message_flows.push_back({item.attribute("sourceRef").value_or(""),
                                       item.attribute("targetRef").value_or(""),
                                       item.attribute("name").value_or("")});
        } else {
          warn_unsupported(item_local);
        }
      }
    } else if (local == "process") {
      parse_process(child, child_ns);
    } else if (local == "message") {
      // Message definitions carry only names in this subset; nothing to map.
    } else {
      warn_unsupported(local);
    }
  }

  // Pools in participant order, then any processes no participant claims.
  std::set<std::size_t> used;
  for (const auto& participant : participants) {
    bool matched = false;
    for (std::size_t i = 0; i < processes.size(); ++i) {
      if (used.count(i) || processes[i].id != participant.process_ref) continue;
      Pool pool = processes[i].pool;
      pool.actor = participant.name.empty() ? processes[i].id : participant.name;
      model.pools.push_back(std::move(pool));
      used.insert(i);
      matched = true;
      break;
    }
    if (!matched)
      warn_dangling("participant '" + participant.name + "' without a matching process");
  }
  for (std::size_t i = 0; i < processes.size(); ++i) {
    if (used.count(i)) continue;
    Pool pool = processes[i].pool;
    pool.actor = processes[i].name.empty() ? processes[i].id : processes[i].name;
    model.pools.push_back(std::move(pool));
  }

  // Message flows: element ids resolve to (pool, node).
  std::map<std::string, std::pair<std::string, std::string>> node_owner;
  {
    // Walk the parsed processes in the same order the pools were added.
    std::vector<const ParsedProcess*> ordered;
    std::set<std::size_t> seen;
    for (const auto& participant : participants) {
      for (std::size_t i = 0; i < processes.size(); ++i) {
        if (!seen.count(i) && processes[i].id == participant.process_ref) {
          ordered.push_back(&processes[i]);
          seen.insert(i);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < processes.size(); ++i)
      if (!seen.count(i)) ordered.push_back(&processes[i]);
    for (std::size_t i = 0; i < ordered.size() && i < model.pools.size(); ++i) {
      for (const auto& elem_id : ordered[i]->node_ids)
        node_owner[elem_id] = {model.pools[i].actor,
                               bpmn_detail::strip_node_prefix(elem_id)};
    }
  }
  for (const auto& raw : raw_message_flows) {
    auto src = node_owner.find(raw.source);
    auto tgt = node_owner.find(raw.target);
    if (src == node_owner.end() || tgt == node_owner.end()) {
      warn_dangling("message flow " + raw.source + "->" + raw.target +
                    " with unresolvable endpoints");
      continue;
    }
    model.message_flows.push_back({src->second.first, src->second.second, tgt->second.first,
                                   tgt->second.second, raw.name});
  }

  sort_diagnostics(result.diagnostics);
  return result;
}

// ---- subset schema validation ----

namespace bpmn_detail {

struct DocumentIndex {
  std::map<std::string, std::string> id_to_element;            // id -> local name
  std::map<std::string, std::set<std::string>> process_nodes;  // process id -> node ids
  std::map<std::string, std::set<std::string>> process_flows;  // process id -> flow ids
  std::set<std::string> process_ids;
};

}  // namespace bpmn_detail

// Content-model validation for the emitted subset of BPMN 2.0. Returns a
// list of violations; empty means the document conforms.
inline std::vector<std::string> validate_bpmn_document(const std::string& document) {
  std::vector<std::string> violations;
  xml::Element root;
  try {
    root = xml::parse(document);
  } catch (const xml::XmlError& e) {
    violations.push_back(e.what());
    return violations;
  }
  xml::NamespaceScope scope;
  scope = scope.with(root);
  auto [root_ns, root_local] = scope.resolve(root.name);
  if (root_ns != kBpmnNamespace || root_local != "definitions") {
    violations.push_back("root element must be definitions in the BPMN 2.0 namespace");
    return violations;
  }
  if (!root.attribute("targetNamespace"))
    violations.push_back("definitions requires a targetNamespace attribute");

  static const std::map<std::string, std::set<std::string>> allowed_children = {
      {"definitions", {"collaboration", "process", "message"}},
      {"collaboration", {"participant", "messageFlow"}},
      {"participant", {}},
      {"messageFlow", {}},
      {"message", {}},
      {"process",
       {"laneSet", "startEvent", "endEvent", "task", "userTask", "manualTask", "serviceTask",
        "exclusiveGateway", "parallelGateway", "intermediateCatchEvent",
        "intermediateThrowEvent", "sequenceFlow"}},
      {"laneSet", {"lane"}},
      {"lane", {"flowNodeRef"}},
      {"flowNodeRef", {}},
      {"startEvent", {"messageEventDefinition"}},
      {"endEvent", {"messageEventDefinition"}},
      {"task", {}},
      {"userTask", {}},
      {"manualTask", {}},
      {"serviceTask", {}},
      {"exclusiveGateway", {}},
      {"parallelGateway", {}},
      {"intermediateCatchEvent", {"messageEventDefinition"}},
      {"intermediateThrowEvent", {"messageEventDefinition"}},
      {"sequenceFlow", {"conditionExpression"}},
      {"messageEventDefinition", {}},
      {"conditionExpression", {}},
  };
  static const std::map<std::string, std::set<std::string>> allowed_attributes = {
      {"definitions", {"id", "name", "targetNamespace", "exporter", "exporterVersion"}},
      {"collaboration", {"id", "name"}},
      {"participant", {"id", "name", "processRef"}},
      {"messageFlow", {"id", "name", "sourceRef", "targetRef", "messageRef"}},
      {"message", {"id", "name"}},
      {"process", {"id", "name", "isExecutable", "processType", "isClosed"}},
      {"laneSet", {"id", "name"}},
      {"lane", {"id", "name"}},
      {"flowNodeRef", {}},
      {"startEvent", {"id", "name", "isInterrupting"}},
      {"endEvent", {"id", "name"}},
      {"task", {"id", "name"}},
      {"userTask", {"id", "name", "implementation"}},
      {"manualTask", {"id", "name"}},
      {"serviceTask", {"id", "name", "implementation"}},
      {"exclusiveGateway", {"id", "name", "default", "gatewayDirection"}},
      {"parallelGateway", {"id", "name", "gatewayDirection"}},
      {"intermediateCatchEvent", {"id", "name"}},
      {"intermediateThrowEvent", {"id", "name"}},
      {"sequenceFlow", {"id", "name", "sourceRef", "targetRef", "isImmediate"}},
      {"messageEventDefinition", {"id", "messageRef"}},
      {"conditionExpression", {"id", "language"}},
  };
  static const std::set<std::string> node_elements = {
      "startEvent",      "endEvent",        "task",
      "userTask",        "manualTask",      "serviceTask",
      "exclusiveGateway", "parallelGateway", "intermediateCatchEvent",
      "intermediateThrowEvent"};

  bpmn_detail::DocumentIndex index;
  struct RefCheck {
    std::string description;
    std::string target_id;
    std::set<std::string> allowed_kinds;
    std::string scope_process;  // non-empty: target must live in this process
  };
  std::vector<RefCheck> refs;

  auto check_element = [&](const xml::Element& element, const xml::NamespaceScope& outer_ns,
                           const std::string& parent_local, const std::string& process_id,
                           auto&& recurse) -> void {
    xml::NamespaceScope ns = outer_ns.with(element);
    auto [uri, local] = ns.resolve(element.name);
    if (uri != kBpmnNamespace) {
      violations.push_back("element '" + element.name + "' is outside the BPMN namespace");
      return;
    }
    if (!allowed_children.count(local)) {
      violations.push_back("element '" + local + "' is not in the supported BPMN subset");
      return;
    }
    if (!parent_local.empty() &&
        !allowed_children.at(parent_local).count(local)) {
      violations.push_back("element '" + local + "' is not allowed inside '" + parent_local +
                           "'");
      return;
    }

    for (const auto& [key, value] : element.attributes) {
      if (key == "xmlns" || key.rfind("xmlns:", 0) == 0) continue;
      auto colon = key.find(':');
      if (colon != std::string::npos) {
        auto [attr_uri, attr_local] = ns.resolve(key);
        if (attr_uri == kBpmnNamespace || attr_uri.empty())
          violations.push_back("attribute '" + key + "' on '" + local +
                               "' must live in a foreign namespace");
        continue;  // foreign-namespace attributes are allowed (anyAttribute)
      }
      if (!allowed_attributes.at(local).count(key))
        violations.push_back("attribute '" + key + "' is not allowed on '" + local + "'");
    }

    if (auto id = element.attribute("id")) {
      if (!bpmn_detail::is_ncname(*id))
        violations.push_back("id '" + *id + "' is not a valid NCName");
      if (!index.id_to_element.emplace(*id, local).second)
        violations.push_back("duplicate id '" + *id + "'");
    } else if (local != "flowNodeRef" && local != "conditionExpression") {
      violations.push_back("element '" + local + "' is missing an id");
    }

    std::string next_process = process_id;
    if (local == "process") {
      next_process = element.attribute("id").value_or("");
      index.process_ids.insert(next_process);
    }
    if (node_elements.count(local) && !process_id.empty())
      index.process_nodes[process_id].insert(element.attribute("id").value_or(""));
    if (local == "sequenceFlow" && !process_id.empty()) {
      index.process_flows[process_id].insert(element.attribute("id").value_or(""));
      for (const char* attr : {"sourceRef", "targetRef"}) {
        auto ref = element.attribute(attr);
        if (!ref)
          violations.push_back("sequenceFlow is missing required attribute " +
                               std::string(attr));
        else
          refs.push_back({"sequenceFlow " + std::string(attr), *ref, node_elements,
                          process_id});
      }
    }
    if (local == "messageFlow") {
      for (const char* attr : {"sourceRef", "targetRef"}) {
        auto ref = element.attribute(attr);
        if (!ref)
          violations.push_back("messageFlow is missing required attribute " +
                               std::string(attr));
        else {
          auto kinds = node_elements;
          kinds.insert("participant");
          refs.push_back({"messageFlow " + std::string(attr), *ref, kinds, ""});
        }
      }
    }
    if (local == "participant") {
      if (auto ref = element.attribute("processRef"))
        refs.push_back({"participant processRef", *ref, {"process"}, ""});
    }
    if (local == "exclusiveGateway") {
      if (auto def = element.attribute("default"))
        refs.push_back({"exclusiveGateway default", *def, {"sequenceFlow"}, process_id});
    }
    if (local == "flowNodeRef") {
      refs.push_back({"flowNodeRef", element.text, node_elements, process_id});
    }

    // Content-model ordering: participants precede messageFlows; laneSets
    // precede flow elements.
    if (local == "collaboration") {
      bool seen_message_flow = false;
      for (const auto& child : element.children) {
        auto [cu, cl] = ns.with(child).resolve(child.name);
        if (cu != kBpmnNamespace) continue;
        if (cl == "messageFlow") seen_message_flow = true;
        if (cl == "participant" && seen_message_flow)
          violations.push_back("participant follows messageFlow inside collaboration");
      }
    }
    if (local == "process") {
      bool seen_flow_element = false;
      for (const auto& child : element.children) {
        auto [cu, cl] = ns.with(child).resolve(child.name);
        if (cu != kBpmnNamespace) continue;
        if (node_elements.count(cl) || cl == "sequenceFlow") seen_flow_element = true;
        if (cl == "laneSet" && seen_flow_element)
          violations.push_back("laneSet follows flow elements inside process");
      }
    }

    for (const auto& child : element.children)
      recurse(child, ns, local, next_process, recurse);
  };

  for (const auto& child : root.children)
    check_element(child, scope, "definitions", "", check_element);

  // ID uniqueness across the whole document is already enforced; resolve the
  // typed references second so forward references work.
  for (const auto& ref : refs) {
    auto it = index.id_to_element.find(ref.target_id);
    if (it == index.id_to_element.end()) {
      violations.push_back(ref.description + " '" + ref.target_id + "' does not resolve");
      continue;
    }
    if (!ref.allowed_kinds.count(it->second)) {
      violations.push_back(ref.description + " '" + ref.target_id +
                           "' resolves to a disallowed element '" + it->second + "'");
      continue;
    }
    if (!ref.scope_process.empty()) {
      const auto& nodes = index.process_nodes[ref.scope_process];
      const auto& flows = index.process_flows[ref.scope_process];
      if (!nodes.count(ref.target_id) && !flows.count(ref.target_id))
        violations.push_back(ref.description + " '" + ref.target_id +
                             "' crosses its process boundary");
    }
  }

  return violations;
}

}  // namespace easinnova
