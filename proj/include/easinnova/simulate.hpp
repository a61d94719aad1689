#pragma once

// Headless token game over the BPMN subset. Sequence flows are the token
// places and nodes fire as transitions, so a marking is: tokens per
// sequence flow, tokens per message channel, plus one activation flag per
// pool (which distinguishes the initial marking from a properly completed
// one). Message channels have capacity 1 per (source pool, target pool,
// message name); senders block while the channel is full.
//
// explore() walks the complete reachable marking graph breadth-first and is
// fully deterministic; random_trace() draws one execution with a seeded
// generator choosing among the enabled firings.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "easinnova/process.hpp"

namespace easinnova {

struct SimConfig {
  std::size_t max_states = 100000;
  unsigned flow_bound = 1;  // tokens allowed per sequence flow (1-safe)
};

enum class SimOutcome { ProperCompletion, Deadlock, BoundExceeded, UnsafeMarking };

inline std::string_view to_string(SimOutcome o) {
  switch (o) {
    case SimOutcome::ProperCompletion: return "proper_completion";
    case SimOutcome::Deadlock: return "deadlock";
    case SimOutcome::BoundExceeded: return "bound_exceeded";
    case SimOutcome::UnsafeMarking: return "unsafe_marking";
  }
  return "?";
}

struct SimEvent {
  std::string pool;
  std::string node;
  std::string label;  // node name when present

  bool operator==(const SimEvent&) const = default;
};

struct SimReport {
  SimOutcome outcome = SimOutcome::ProperCompletion;
  std::size_t states_explored = 0;
  std::set<std::string> reached_nodes;  // "<pool>/<node id>"
  std::optional<std::vector<SimEvent>> witness;
};

namespace sim_detail {

// Flattened model: integer-indexed nodes, flows and channels.
struct CompiledNode {
  int pool = 0;
  NodeKind kind = NodeKind::Task;
  std::string id;
  std::string name;
  std::vector<int> in_flows;
  std::vector<int> out_flows;
  std::vector<int> in_channels;
  std::vector<int> out_channels;
};

struct CompiledModel {
  std::vector<std::string> pool_actors;
  std::vector<CompiledNode> nodes;  // grouped by pool, model order
  std::size_t flow_count = 0;
  std::size_t channel_count = 0;
};

inline CompiledModel compile(const ProcessModel& model) {
  CompiledModel cm;
  std::map<std::pair<int, std::string>, int> node_index;  // (pool, id) -> index
  for (int p = 0; p < static_cast<int>(model.pools.size()); ++p) {
    const Pool& pool = model.pools[p];
    cm.pool_actors.push_back(pool.actor);
    for (const auto& node : pool.nodes) {
      node_index[{p, node.id}] = static_cast<int>(cm.nodes.size());
      CompiledNode cn;
      cn.pool = p;
      cn.kind = node.kind;
      cn.id = node.id;
      cn.name = node.name;
      cm.nodes.push_back(std::move(cn));
    }
  }
  for (int p = 0; p < static_cast<int>(model.pools.size()); ++p) {
    for (const auto& flow : model.pools[p].sequence_flows) {
      const int flow_id = static_cast<int>(cm.flow_count++);
      cm.nodes[node_index.at({p, flow.source})].out_flows.push_back(flow_id);
      cm.nodes[node_index.at({p, flow.target})].in_flows.push_back(flow_id);
    }
  }
  std::map<int, std::string> pool_of_actor_cache;
  std::map<std::string, int> actor_to_pool;
  for (int p = 0; p < static_cast<int>(model.pools.size()); ++p)
    actor_to_pool[model.pools[p].actor] = p;
  std::map<std::tuple<int, int, std::string>, int> channel_index;
  for (const auto& flow : model.message_flows) {
    const int sp = actor_to_pool.at(flow.source_pool);
    const int tp = actor_to_pool.at(flow.target_pool);
    auto key = std::make_tuple(sp, tp, flow.name);
    auto [it, inserted] = channel_index.try_emplace(key, static_cast<int>(cm.channel_count));
    if (inserted) ++cm.channel_count;
    const int channel = it->second;
    auto& src = cm.nodes[node_index.at({sp, flow.source})];
    auto& tgt = cm.nodes[node_index.at({tp, flow.target})];
    if (std::find(src.out_channels.begin(), src.out_channels.end(), channel) ==
        src.out_channels.end())
      src.out_channels.push_back(channel);
    if (std::find(tgt.in_channels.begin(), tgt.in_channels.end(), channel) ==
        tgt.in_channels.end())
      tgt.in_channels.push_back(channel);
  }
  return cm;
}

// Marking encoded as flat bytes: flow tokens, channel tokens, pool flags.
struct Marking {
  std::vector<std::uint8_t> flows;
  std::vector<std::uint8_t> channels;
  std::vector<std::uint8_t> activated;

  std::string key() const {
    std::string k;
    k.reserve(flows.size() + channels.size() + activated.size());
    k.append(flows.begin(), flows.end());
    k.append(channels.begin(), channels.end());
    k.append(activated.begin(), activated.end());
    return k;
  }
};

// One enabled firing: a node plus the chosen input/output variant (XOR
// branching, merge-side input choice, channel choice).
struct Firing {
  int node = 0;
  int in_flow = -1;     // consumed sequence flow (-1 when none, e.g. starts)
  int out_flow = -1;    // for XOR splits the single chosen branch
  int in_channel = -1;  // consumed channel for message starts/catches
  bool unsafe = false;  // firing would exceed the flow bound
};

struct Engine {
  const CompiledModel& cm;
  SimConfig config;

  explicit Engine(const CompiledModel& compiled, SimConfig cfg) : cm(compiled), config(cfg) {}

  Marking initial() const {
    Marking m;
    m.flows.assign(cm.flow_count, 0);
    m.channels.assign(cm.channel_count, 0);
    m.activated.assign(cm.pool_actors.size(), 0);
    return m;
  }

  // Enabled firings in a fixed order (node index, then variant indexes), so
  // exploration and seeded traces are deterministic.
  std::vector<Firing> enabled(const Marking& m) const {
    std::vector<Firing> out;
    for (int n = 0; n < static_cast<int>(cm.nodes.size()); ++n) {
      const CompiledNode& node = cm.nodes[n];
      switch (node.kind) {
        case NodeKind::StartNone: {
          if (!m.activated[node.pool]) out.push_back({n, -1, -1, -1});
          break;
        }
        case NodeKind::StartMessage: {
          if (m.activated[node.pool]) break;
          for (int ch : node.in_channels)
            if (m.channels[ch] > 0) out.push_back({n, -1, -1, ch});
          break;
        }
        case NodeKind::Task: {
          if (!channels_ready(node, m)) break;
          for (int in : node.in_flows)
            if (m.flows[in] > 0) out.push_back({n, in, -1, -1});
          break;
        }
        case NodeKind::CatchMessage: {
          for (int in : node.in_flows) {
            if (m.flows[in] == 0) continue;
            for (int ch : node.in_channels)
              if (m.channels[ch] > 0) out.push_back({n, in, -1, ch});
          }
          break;
        }
        case NodeKind::ThrowMessage: {
          if (!send_capacity(node, m)) break;
          for (int in : node.in_flows)
            if (m.flows[in] > 0) out.push_back({n, in, -1, -1});
          break;
        }
        case NodeKind::XorGateway: {
          for (int in : node.in_flows) {
            if (m.flows[in] == 0) continue;
            if (node.out_flows.empty()) continue;
            for (int branch : node.out_flows) out.push_back({n, in, branch, -1});
          }
          break;
        }
        case NodeKind::AndGateway: {
          bool all = !node.in_flows.empty();
          for (int in : node.in_flows)
            if (m.flows[in] == 0) all = false;
          if (all) out.push_back({n, -1, -1, -1});
          break;
        }
        case NodeKind::End: {
          if (!send_capacity(node, m)) break;
          for (int in : node.in_flows)
            if (m.flows[in] > 0) out.push_back({n, in, -1, -1});
          break;
        }
      }
    }
    return out;
  }

  Marking fire(const Marking& m, Firing& firing) const {
    Marking next = m;
    const CompiledNode& node = cm.nodes[firing.node];
    if (firing.in_flow >= 0) next.flows[firing.in_flow] -= 1;
    if (node.kind == NodeKind::AndGateway)
      for (int in : node.in_flows) next.flows[in] -= 1;
    if (firing.in_channel >= 0) {
      next.channels[firing.in_channel] -= 1;
    } else if (node.kind == NodeKind::Task) {
      // A task targeted by message flows is a receive task: it consumes one
      // message from each incoming channel (enabledness guarantees them).
      for (int ch : node.in_channels) next.channels[ch] -= 1;
    }

    if (node.kind == NodeKind::StartNone || node.kind == NodeKind::StartMessage)
      next.activated[node.pool] = 1;

    if (node.kind == NodeKind::XorGateway) {
      if (firing.out_flow >= 0) {
        next.flows[firing.out_flow] += 1;
        if (next.flows[firing.out_flow] > config.flow_bound) firing.unsafe = true;
      }
    } else if (node.kind != NodeKind::End) {
      for (int out : node.out_flows) {
        next.flows[out] += 1;
        if (next.flows[out] > config.flow_bound) firing.unsafe = true;
      }
    }
    if (node.kind == NodeKind::ThrowMessage || node.kind == NodeKind::Task ||
        node.kind == NodeKind::End)
      for (int ch : node.out_channels) next.channels[ch] += 1;
    return next;
  }

  bool channels_ready(const CompiledNode& node, const Marking& m) const {
    // Receive side: a task targeted by message flows waits for every message.
    for (int ch : node.in_channels)
      if (m.channels[ch] == 0) return false;
    return send_capacity(node, m);
  }

  bool send_capacity(const CompiledNode& node, const Marking& m) const {
    for (int ch : node.out_channels)
      if (m.channels[ch] >= 1) return false;  // capacity-1 channels
    return true;
  }

  bool is_clean(const Marking& m) const {
    for (auto t : m.flows)
      if (t) return false;
    for (auto t : m.channels)
      if (t) return false;
    return true;
  }

  bool any_activated(const Marking& m) const {
    for (auto a : m.activated)
      if (a) return true;
    return false;
  }

  SimEvent event_for(const Firing& firing) const {
    const CompiledNode& node = cm.nodes[firing.node];
    return {cm.pool_actors[node.pool], node.id, node.name};
  }
};

}  // namespace sim_detail

namespace detail {

inline void require_valid_structure(const ProcessModel& model) {
  auto diags = validate_structure(model);
  if (has_errors(diags))
    throw std::invalid_argument("model fails structural validation: " +
                                diags.front().message);
}

}  // namespace detail

// Exhaustive breadth-first exploration of the reachable marking graph.
inline SimReport explore(const ProcessModel& model, const SimConfig& config = {}) {
  detail::require_valid_structure(model);
  const auto cm = sim_detail::compile(model);
  sim_detail::Engine engine(cm, config);

  SimReport report;
  struct Visited {
    std::int64_t parent;  // index into order, -1 for the root
    sim_detail::Firing via;
  };
  std::vector<std::string> order;                  // marking keys in discovery order
  std::vector<sim_detail::Marking> markings;       // same indexing as order
  std::unordered_map<std::string, std::int64_t> index;
  std::vector<Visited> meta;

  auto initial = engine.initial();
  order.push_back(initial.key());
  markings.push_back(initial);
  index[order[0]] = 0;
  meta.push_back({-1, {}});

  std::optional<std::int64_t> deadlock_state;
  std::optional<std::int64_t> unsafe_parent;
  std::optional<sim_detail::Firing> unsafe_firing;
  bool bound_exceeded = false;

  std::deque<std::int64_t> queue{0};
  while (!queue.empty()) {
    const std::int64_t current = queue.front();
    queue.pop_front();
    const auto marking = markings[current];
    auto firings = engine.enabled(marking);

    if (firings.empty()) {
      const bool proper = engine.is_clean(marking) &&
                          (engine.any_activated(marking) || cm.pool_actors.empty());
      if (!proper && !deadlock_state) deadlock_state = current;
      continue;
    }
    for (auto& firing : firings) {
      auto next = engine.fire(marking, firing);
      const auto& node = cm.nodes[firing.node];
      report.reached_nodes.insert(cm.pool_actors[node.pool] + "/" + node.id);
      if (firing.unsafe) {
        if (!unsafe_parent) {
          unsafe_parent = current;
          unsafe_firing = firing;
        }
        continue;  // unsafe markings are reported, not explored
      }
      const std::string key = next.key();
      if (index.count(key)) continue;
      if (order.size() >= config.max_states) {
        bound_exceeded = true;
        queue.clear();
        break;
      }
      const std::int64_t id = static_cast<std::int64_t>(order.size());
      order.push_back(key);
      markings.push_back(std::move(next));
      index[key] = id;
      meta.push_back({current, firing});
      queue.push_back(id);
    }
  }

  report.states_explored = order.size();

  auto trace_to = [&](std::int64_t state) {
    std::vector<SimEvent> events;
    for (std::int64_t at = state; at > 0; at = meta[at].parent)
      events.push_back(engine.event_for(meta[at].via));
    std::reverse(events.begin(), events.end());
    return events;
  };

  if (bound_exceeded) {
    report.outcome = SimOutcome::BoundExceeded;
    report.witness = trace_to(static_cast<std::int64_t>(order.size()) - 1);
  } else if (unsafe_parent) {
    report.outcome = SimOutcome::UnsafeMarking;
    auto events = trace_to(*unsafe_parent);
    events.push_back(engine.event_for(*unsafe_firing));
    report.witness = events;
  } else if (deadlock_state) {
    report.outcome = SimOutcome::Deadlock;
    report.witness = trace_to(*deadlock_state);
  } else {
    report.outcome = SimOutcome::ProperCompletion;
  }
  return report;
}

// One execution; XOR branches and interleavings are resolved by a seeded
// deterministic generator. A model without choice points yields its unique
// event order whatever the seed.
inline std::vector<SimEvent> random_trace(const ProcessModel& model, std::uint64_t seed,
                                          std::size_t max_steps = 100000) {
  detail::require_valid_structure(model);
  const auto cm = sim_detail::compile(model);
  sim_detail::Engine engine(cm, SimConfig{});
  std::mt19937_64 rng(seed);

  std::vector<SimEvent> events;
  auto marking = engine.initial();
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto firings = engine.enabled(marking);
    if (firings.empty()) break;
    auto& chosen = firings[rng() % firings.size()];
    marking = engine.fire(marking, chosen);
    events.push_back(engine.event_for(chosen));
    if (chosen.unsafe) break;  // modeling error; stop the walkthrough
  }
  return events;
}

inline nlohmann::ordered_json report_to_json(const SimReport& report) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(to_string(report.outcome));
  j["states_explored"] = report.states_explored;
  j["reached_nodes"] = report.reached_nodes;
  if (report.witness) {
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& e : *report.witness)
      trace.push_back({{"pool", e.pool}, {"node", e.node}, {"label", e.label}});
    j["witness"] = std::move(trace);
  }
  return j;
}

inline std::string render_report_text(const SimReport& report) {
  std::string out = "outcome: " + std::string(to_string(report.outcome)) + "\n";
  out += "states explored: " + std::to_string(report.states_explored) + "\n";
  out += "nodes reached: " + std::to_string(report.reached_nodes.size()) + "\n";
  if (report.witness) {
    out += "witness trace:\n";
    for (const auto& e : *report.witness) {
      out += "  " + e.pool + "/" + e.node;
      if (!e.label.empty()) out += " (" + e.label + ")";
      out += "\n";
    }
  }
  return out;
}

}  // namespace easinnova
