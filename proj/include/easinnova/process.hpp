#pragma once

// BPMN-subset collaboration model: pools (one per actor, optional lanes),
// eight node kinds, sequence flows inside pools, message flows across
// pools. PIM models carry topology; PSM models add task execution kinds.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "easinnova/diagnostics.hpp"
#include "easinnova/matrix.hpp"

namespace easinnova {

enum class Maturity { Pim, Psm };

inline std::string_view to_string(Maturity m) { return m == Maturity::Pim ? "pim" : "psm"; }

inline std::optional<Maturity> parse_maturity(std::string_view s) {
  if (s == "pim") return Maturity::Pim;
  if (s == "psm") return Maturity::Psm;
  return std::nullopt;
}

enum class NodeKind {
  StartNone,
  StartMessage,
  End,
  Task,
  XorGateway,
  AndGateway,
  CatchMessage,
  ThrowMessage,
};

inline std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::StartNone: return "start_none";
    case NodeKind::StartMessage: return "start_message";
    case NodeKind::End: return "end";
    case NodeKind::Task: return "task";
    case NodeKind::XorGateway: return "xor_gateway";
    case NodeKind::AndGateway: return "and_gateway";
    case NodeKind::CatchMessage: return "catch_message";
    case NodeKind::ThrowMessage: return "throw_message";
  }
  return "?";
}

inline std::optional<NodeKind> parse_node_kind(std::string_view s) {
  if (s == "start_none") return NodeKind::StartNone;
  if (s == "start_message") return NodeKind::StartMessage;
  if (s == "end") return NodeKind::End;
  if (s == "task") return NodeKind::Task;
  if (s == "xor_gateway") return NodeKind::XorGateway;
  if (s == "and_gateway") return NodeKind::AndGateway;
  if (s == "catch_message") return NodeKind::CatchMessage;
  if (s == "throw_message") return NodeKind::ThrowMessage;
  return std::nullopt;
}

enum class ExecutionKind { Unspecified, User, ManualPassThrough, Automatic };

inline std::string_view to_string(ExecutionKind k) {
  switch (k) {
    case ExecutionKind::Unspecified: return "unspecified";
    case ExecutionKind::User: return "user";
    case ExecutionKind::ManualPassThrough: return "manual_pass_through";
    case ExecutionKind::Automatic: return "automatic";
  }
  return "?";
}

inline std::optional<ExecutionKind> parse_execution_kind(std::string_view s) {
  if (s == "unspecified") return ExecutionKind::Unspecified;
  if (s == "user") return ExecutionKind::User;
  if (s == "manual_pass_through") return ExecutionKind::ManualPassThrough;
  if (s == "automatic") return ExecutionKind::Automatic;
  return std::nullopt;
}

// CRUDA lifecycle operation a task applies to a business object.
enum class LifecycleOp : char {
  Create = 'C',
  Read = 'R',
  Update = 'U',
  Delete = 'D',
  Archive = 'A',
};

inline std::optional<LifecycleOp> parse_lifecycle_op(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'C': return LifecycleOp::Create;
    case 'R': return LifecycleOp::Read;
    case 'U': return LifecycleOp::Update;
    case 'D': return LifecycleOp::Delete;
    case 'A': return LifecycleOp::Archive;
    default: return std::nullopt;
  }
}

struct Effect {
  std::string object;
  LifecycleOp op = LifecycleOp::Read;

  auto operator<=>(const Effect&) const = default;
};

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Task;
  std::string name;  // optional label
  std::string lane;  // optional lane name
  // Task detail; meaningful only for kind == Task.
  ExecutionKind execution = ExecutionKind::Unspecified;
  std::vector<Effect> effects;

  bool operator==(const Node&) const = default;
};

struct SequenceFlow {
  std::string source;
  std::string target;
  std::string condition;   // optional, XOR split branches
  bool is_default = false; // at most one per XOR split

  bool operator==(const SequenceFlow&) const = default;
};

struct MessageFlow {
  std::string source_pool;
  std::string source;
  std::string target_pool;
  std::string target;
  std::string name;  // message name; channels are keyed per name

  bool operator==(const MessageFlow&) const = default;
};

struct Pool {
  std::string actor;
  std::vector<std::string> lanes;
  std::vector<Node> nodes;
  std::vector<SequenceFlow> sequence_flows;

  bool operator==(const Pool&) const = default;

  const Node* find_node(const std::string& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
};

struct ProcessModel {
  Stage stage = Stage::AsIs;
  Maturity maturity = Maturity::Pim;
  std::vector<Pool> pools;
  std::vector<MessageFlow> message_flows;

  bool operator==(const ProcessModel&) const = default;

  CellId cell() const {
    return {maturity == Maturity::Pim ? Layer::Pim : Layer::Psm, stage};
  }

  std::string subject() const { return cell().path() + "/process"; }

  const Pool* find_pool(const std::string& actor) const {
    for (const auto& p : pools)
      if (p.actor == actor) return &p;
    return nullptr;
  }
};

// ---- parsing / serialization ----

struct ProcessParseResult {
  ProcessModel model;
  std::vector<Diagnostic> diagnostics;
};

inline ProcessParseResult parse_process_model(const nlohmann::json& doc) {
  ProcessParseResult result;
  ProcessModel& model = result.model;
  auto fail = [&](const std::string& message) {
    result.diagnostics.push_back(
        make_error("PROC-PARSE", model.cell(), model.subject(), message));
  };

  if (!doc.is_object()) {
    fail("process document is not a JSON object");
    return result;
  }
  if (doc.contains("stage") && doc["stage"].is_string()) {
    auto stage = parse_stage(doc["stage"].get<std::string>());
    if (stage && *stage != Stage::Transformation)
      model.stage = *stage;
    else
      fail("unknown process stage '" + doc["stage"].get<std::string>() + "'");
  }
  if (doc.contains("maturity") && doc["maturity"].is_string()) {
    auto maturity = parse_maturity(doc["maturity"].get<std::string>());
    if (maturity)
      model.maturity = *maturity;
    else
      fail("unknown maturity '" + doc["maturity"].get<std::string>() + "'");
  }

  if (doc.contains("pools") && doc["pools"].is_array()) {
    for (const auto& pj : doc["pools"]) {
      if (!pj.is_object() || !pj.contains("actor") || !pj["actor"].is_string()) {
        fail("pool entry needs a string 'actor'");
        continue;
      }
      Pool pool;
      pool.actor = pj["actor"].get<std::string>();
      if (pj.contains("lanes") && pj["lanes"].is_array())
        for (const auto& lane : pj["lanes"])
          if (lane.is_string()) pool.lanes.push_back(lane.get<std::string>());
      if (pj.contains("nodes") && pj["nodes"].is_array()) {
        for (const auto& nj : pj["nodes"]) {
          if (!nj.is_object() || !nj.contains("id") || !nj["id"].is_string() ||
              !nj.contains("kind") || !nj["kind"].is_string()) {
            fail("node entry needs string 'id' and 'kind' (pool '" + pool.actor + "')");
            continue;
          }
          Node node;
          node.id = nj["id"].get<std::string>();
          auto kind = parse_node_kind(nj["kind"].get<std::string>());
          if (!kind) {
            fail("unknown node kind '" + nj["kind"].get<std::string>() + "' (node '" +
                 node.id + "')");
            continue;
          }
          node.kind = *kind;
          if (nj.contains("name") && nj["name"].is_string())
            node.name = nj["name"].get<std::string>();
          if (nj.contains("lane") && nj["lane"].is_string())
            node.lane = nj["lane"].get<std::string>();
          if (nj.contains("execution") && nj["execution"].is_string()) {
            auto exec = parse_execution_kind(nj["execution"].get<std::string>());
            if (exec)
              node.execution = *exec;
            else
              fail("unknown execution kind '" + nj["execution"].get<std::string>() +
                   "' (node '" + node.id + "')");
          }
          if (nj.contains("effects") && nj["effects"].is_array()) {
            for (const auto& ej : nj["effects"]) {
              if (!ej.is_object() || !ej.contains("object") || !ej["object"].is_string() ||
                  !ej.contains("op") || !ej["op"].is_string()) {
                fail("effect entry needs string 'object' and 'op' (node '" + node.id + "')");
                continue;
              }
              auto op = parse_lifecycle_op(ej["op"].get<std::string>());
              if (!op) {
                fail("unknown lifecycle op '" + ej["op"].get<std::string>() + "' (node '" +
                     node.id + "')");
                continue;
              }
              node.effects.push_back({ej["object"].get<std::string>(), *op});
            }
          }
          pool.nodes.push_back(std::move(node));
        }
      }
      if (pj.contains("sequence_flows") && pj["sequence_flows"].is_array()) {
        for (const auto& fj : pj["sequence_flows"]) {
          if (!fj.is_object() || !fj.contains("source") || !fj["source"].is_string() ||
              !fj.contains("target") || !fj["target"].is_string()) {
            fail("sequence flow needs string 'source' and 'target' (pool '" + pool.actor +
                 "')");
            continue;
          }
          SequenceFlow flow;
          flow.source = fj["source"].get<std::string>();
          flow.target = fj["target"].get<std::string>();
          if (fj.contains("condition") && fj["condition"].is_string())
            flow.condition = fj["condition"].get<std::string>();
          if (fj.contains("default") && fj["default"].is_boolean())
            flow.is_default = fj["default"].get<bool>();
          pool.sequence_flows.push_back(std::move(flow));
        }
      }
      model.pools.push_back(std::move(pool));
    }
  } else if (doc.contains("pools")) {
    fail("'pools' must be an array");
  }

  if (doc.contains("message_flows") && doc["message_flows"].is_array()) {
    for (const auto& mj : doc["message_flows"]) {
      if (!mj.is_object() || !mj.contains("source_pool") || !mj["source_pool"].is_string() ||
          !mj.contains("source") || !mj["source"].is_string() ||
          !mj.contains("target_pool") || !mj["target_pool"].is_string() ||
          !mj.contains("target") || !mj["target"].is_string()) {
        fail("message flow needs string 'source_pool', 'source', 'target_pool', 'target'");
        continue;
      }
      MessageFlow flow;
      flow.source_pool = mj["source_pool"].get<std::string>();
      flow.source = mj["source"].get<std::string>();
      flow.target_pool = mj["target_pool"].get<std::string>();
      flow.target = mj["target"].get<std::string>();
      if (mj.contains("name") && mj["name"].is_string())
        flow.name = mj["name"].get<std::string>();
      model.message_flows.push_back(std::move(flow));
    }
  }

  return result;
}

inline nlohmann::ordered_json serialize_process_model(const ProcessModel& model) {
  nlohmann::ordered_json doc;
  doc["stage"] = std::string(to_string(model.stage));
  doc["maturity"] = std::string(to_string(model.maturity));
  doc["pools"] = nlohmann::ordered_json::array();
  for (const auto& pool : model.pools) {
    nlohmann::ordered_json pj;
    pj["actor"] = pool.actor;
    if (!pool.lanes.empty()) pj["lanes"] = pool.lanes;
    pj["nodes"] = nlohmann::ordered_json::array();
    for (const auto& node : pool.nodes) {
      nlohmann::ordered_json nj;
      nj["id"] = node.id;
      nj["kind"] = std::string(to_string(node.kind));
      if (!node.name.empty()) nj["name"] = node.name;
      if (!node.lane.empty()) nj["lane"] = node.lane;
      if (node.kind == NodeKind::Task && node.execution != ExecutionKind::Unspecified)
        nj["execution"] = std::string(to_string(node.execution));
      if (!node.effects.empty()) {
        nj["effects"] = nlohmann::ordered_json::array();
        for (const auto& e : node.effects)
          nj["effects"].push_back(
              {{"object", e.object}, {"op", std::string(1, static_cast<char>(e.op))}});
      }
      pj["nodes"].push_back(std::move(nj));
    }
    pj["sequence_flows"] = nlohmann::ordered_json::array();
    for (const auto& flow : pool.sequence_flows) {
      nlohmann::ordered_json fj;
      fj["source"] = flow.source;
      fj["target"] = flow.target;
      if (!flow.condition.empty()) fj["condition"] = flow.condition;
      if (flow.is_default) fj["default"] = true;
      pj["sequence_flows"].push_back(std::move(fj));
    }
    doc["pools"].push_back(std::move(pj));
  }
  doc["message_flows"] = nlohmann::ordered_json::array();
  for (const auto& flow : model.message_flows) {
    nlohmann::ordered_json fj;
    fj["source_pool"] = flow.source_pool;
    fj["source"] = flow.source;
    fj["target_pool"] = flow.target_pool;
    fj["target"] = flow.target;
    if (!flow.name.empty()) fj["name"] = flow.name;
    doc["message_flows"].push_back(std::move(fj));
  }
  return doc;
}

// ---- structural validation ----

namespace detail {

inline bool is_start(NodeKind k) {
  return k == NodeKind::StartNone || k == NodeKind::StartMessage;
}

inline bool message_source_kind(NodeKind k) {
  return k == NodeKind::ThrowMessage || k == NodeKind::Task || k == NodeKind::End;
}

inline bool message_target_kind(NodeKind k) {
  return k == NodeKind::CatchMessage || k == NodeKind::StartMessage || k == NodeKind::Task;
}

}  // namespace detail

inline std::vector<Diagnostic> validate_structure(const ProcessModel& model) {
  std::vector<Diagnostic> out;
  const CellId cell = model.cell();
  const std::string subject = model.subject();

  std::set<std::string> pool_names;
  for (const auto& pool : model.pools) {
    if (!pool_names.insert(pool.actor).second)
      out.push_back(make_error("PROC-DUP-POOL", cell, subject,
                               "duplicate pool '" + pool.actor + "'"));
  }

  for (const auto& pool : model.pools) {
    std::set<std::string> ids;
    for (const auto& node : pool.nodes) {
      if (!ids.insert(node.id).second)
        out.push_back(make_error("PROC-DUP-ID", cell, subject,
                                 "duplicate node id '" + node.id + "' in pool '" +
                                     pool.actor + "'"));
    }

    // Resolve sequence-flow endpoints; a flow whose endpoint lives in another
    // pool is a cross-pool sequence flow, anything else unresolvable is a bad
    // reference.
    std::map<std::string, std::vector<const SequenceFlow*>> incoming, outgoing;
    for (const auto& flow : pool.sequence_flows) {
      bool ok = true;
      for (const std::string& endpoint : {flow.source, flow.target}) {
        if (ids.count(endpoint)) continue;
        ok = false;
        bool elsewhere = false;
        for (const auto& other : model.pools)
          if (&other != &pool && other.find_node(endpoint)) elsewhere = true;
        if (elsewhere)
          out.push_back(make_error("PROC-XPOOL-SEQ", cell, subject,
                                   "sequence flow " + flow.source + "->" + flow.target +
                                       " crosses out of pool '" + pool.actor + "'"));
        else
          out.push_back(make_error("PROC-BAD-REF", cell, subject,
                                   "sequence flow endpoint '" + endpoint +
                                       "' does not exist in pool '" + pool.actor + "'"));
      }
      if (ok) {
        outgoing[flow.source].push_back(&flow);
        incoming[flow.target].push_back(&flow);
      }
    }

    bool has_start = false;
    bool has_end = false;
    for (const auto& node : pool.nodes) {
      if (detail::is_start(node.kind)) {
        has_start = true;
        if (!incoming[node.id].empty())
          out.push_back(make_error("PROC-START-IN", cell, subject,
                                   "start node '" + node.id + "' has incoming sequence flow"));
      }
      if (node.kind == NodeKind::End) {
        has_end = true;
        if (!outgoing[node.id].empty())
          out.push_back(make_error("PROC-END-OUT", cell, subject,
                                   "end node '" + node.id + "' has outgoing sequence flow"));
      }
      if (node.kind == NodeKind::XorGateway || node.kind == NodeKind::AndGateway) {
        if (incoming[node.id].size() < 2 && outgoing[node.id].size() < 2)
          out.push_back(make_error("PROC-GW-DEGREE", cell, subject,
                                   "gateway '" + node.id +
                                       "' has fewer than 2 branches on its splitting side"));
      }
    }
    if (!pool.nodes.empty()) {
      if (!has_start)
        out.push_back(make_error("PROC-NOSTART", cell, subject,
                                 "pool '" + pool.actor + "' has no start node"));
      if (!has_end)
        out.push_back(make_error("PROC-NOEND", cell, subject,
                                 "pool '" + pool.actor + "' has no end node"));
    }

    // Reachability: forward from the starts, backward from the ends.
    std::set<std::string> forward, backward;
    std::vector<std::string> frontier;
    for (const auto& node : pool.nodes)
      if (detail::is_start(node.kind)) {
        forward.insert(node.id);
        frontier.push_back(node.id);
      }
    while (!frontier.empty()) {
      std::string id = frontier.back();
      frontier.pop_back();
      for (const auto* flow : outgoing[id])
        if (forward.insert(flow->target).second) frontier.push_back(flow->target);
    }
    for (const auto& node : pool.nodes)
      if (node.kind == NodeKind::End) {
        backward.insert(node.id);
        frontier.push_back(node.id);
      }
    while (!frontier.empty()) {
      std::string id = frontier.back();
      frontier.pop_back();
      for (const auto* flow : incoming[id])
        if (backward.insert(flow->source).second) frontier.push_back(flow->source);
    }
    for (const auto& node : pool.nodes) {
      if (!forward.count(node.id) || !backward.count(node.id)) {
        out.push_back(make_error("PROC-DANGLING", cell, subject,
                                 "node '" + node.id + "' in pool '" + pool.actor +
                                     "' is not on a start-to-end path"));
      }
    }
  }

  for (const auto& flow : model.message_flows) {
    const Pool* src_pool = model.find_pool(flow.source_pool);
    const Pool* tgt_pool = model.find_pool(flow.target_pool);
    const Node* src = src_pool ? src_pool->find_node(flow.source) : nullptr;
    const Node* tgt = tgt_pool ? tgt_pool->find_node(flow.target) : nullptr;
    if (!src || !tgt) {
      out.push_back(make_error("PROC-BAD-REF", cell, subject,
                               "message flow " + flow.source + "->" + flow.target +
                                   " references a missing pool or node"));
      continue;
    }
    if (flow.source_pool == flow.target_pool) {
      out.push_back(make_error("PROC-MSG-SAMEPOOL", cell, subject,
                               "message flow " + flow.source + "->" + flow.target +
                                   " connects nodes of the same pool '" + flow.source_pool +
                                   "'"));
      continue;
    }
    if (!detail::message_source_kind(src->kind))
      out.push_back(make_error("PROC-MSG-KIND", cell, subject,
                               "message flow source '" + flow.source + "' has kind " +
                                   std::string(to_string(src->kind)) +
                                   "; expected throw_message, task or end"));
    if (!detail::message_target_kind(tgt->kind))
      out.push_back(make_error("PROC-MSG-KIND", cell, subject,
                               "message flow target '" + flow.target + "' has kind " +
                                   std::string(to_string(tgt->kind)) +
                                   "; expected catch_message, start_message or task"));
  }

  sort_diagnostics(out);
  return out;
}

// ---- PIM -> PSM enrichment ----

inline ProcessModel enrich_to_psm(const ProcessModel& model,
                                  const std::map<std::string, ExecutionKind>& annotations) {
  if (model.maturity != Maturity::Pim)
    throw std::invalid_argument("enrich_to_psm expects a PIM-maturity model");
  ProcessModel enriched = model;
  enriched.maturity = Maturity::Psm;
  for (const auto& [id, kind] : annotations) {
    bool found = false;
    for (auto& pool : enriched.pools) {
      for (auto& node : pool.nodes) {
        if (node.id == id) {
          if (node.kind != NodeKind::Task)
            throw std::invalid_argument("annotation target '" + id + "' is not a task");
          node.execution = kind;
          found = true;
        }
      }
    }
    if (!found) throw std::invalid_argument("annotation target '" + id + "' does not exist");
  }
  return enriched;
}

// ---- executability ----

inline std::vector<Diagnostic> check_executable(const ProcessModel& model) {
  if (model.maturity != Maturity::Psm)
    throw std::invalid_argument("check_executable expects a PSM-maturity model");
  std::vector<Diagnostic> out;
  const CellId cell = model.cell();
  const std::string subject = model.subject();
  for (const auto& pool : model.pools) {
    for (const auto& node : pool.nodes) {
      if (node.kind == NodeKind::Task && node.execution == ExecutionKind::Unspecified)
        out.push_back(make_error("PSM-UNTYPED", cell, subject,
                                 "task '" + node.id + "' in pool '" + pool.actor +
                                     "' has no execution kind"));
    }
    for (const auto& node : pool.nodes) {
      if (node.kind != NodeKind::XorGateway) continue;
      std::vector<const SequenceFlow*> outs;
      for (const auto& flow : pool.sequence_flows)
        if (flow.source == node.id) outs.push_back(&flow);
      if (outs.size() < 2) continue;  // not a split
      bool has_default = std::any_of(outs.begin(), outs.end(),
                                     [](const SequenceFlow* f) { return f->is_default; });
      bool all_conditioned = std::all_of(outs.begin(), outs.end(), [](const SequenceFlow* f) {
        return !f->condition.empty() || f->is_default;
      });
      if (!has_default && !all_conditioned)
        out.push_back(make_error("PSM-XOR-NOCOND", cell, subject,
                                 "XOR split '" + node.id + "' in pool '" + pool.actor +
                                     "' lacks a default flow and conditions on all branches"));
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace easinnova
