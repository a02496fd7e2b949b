#pragma once

// Node-side protocol: random-walk launch and forwarding, view deposition at
// the walk's terminal node, hello-based neighbour discovery, and the two
// view-management policies (size bounded, timeout bounded).

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rwsink/dutycycle.hpp"
#include "rwsink/error.hpp"
#include "rwsink/rng.hpp"
#include "rwsink/topology.hpp"

namespace rwsink {

using Reading = std::uint64_t;

struct ViewEntry {
  NodeId origin = 0;
  Reading data_value = 0;
  double last_time = 0.0;

  friend bool operator==(const ViewEntry&, const ViewEntry&) = default;
};

struct SizeBased {
  std::size_t k = 1;
};

struct TimeoutBased {
  double tau = 1.0;
};

using ViewPolicy = std::variant<SizeBased, TimeoutBased>;

inline void validate(const ViewPolicy& policy) {
  if (const auto* s = std::get_if<SizeBased>(&policy); s && s->k < 1) {
    throw ConfigError("size-based view needs k >= 1");
  }
  if (const auto* t = std::get_if<TimeoutBased>(&policy); t && !(t->tau > 0.0)) {
    throw ConfigError("timeout-based view needs tau > 0");
  }
}

inline std::string to_string(const ViewPolicy& policy) {
  if (const auto* s = std::get_if<SizeBased>(&policy)) return "size:" + std::to_string(s->k);
  char buf[64];
  std::snprintf(buf, sizeof buf, "timeout:%.17g", std::get<TimeoutBased>(policy).tau);
  return buf;
}

class View {
 public:
  View() = default;
  View(NodeId owner, ViewPolicy policy) : owner_(owner), policy_(policy) { validate(policy_); }

  NodeId owner() const noexcept { return owner_; }
  const ViewPolicy& policy() const noexcept { return policy_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  bool contains(NodeId origin) const { return entries_.contains(origin); }

  const ViewEntry* find(NodeId origin) const {
    const auto it = entries_.find(origin);
    return it == entries_.end() ? nullptr : &it->second;
  }

  // Entries in ascending origin order.
  std::vector<ViewEntry> entries() const {
    std::vector<ViewEntry> out;
    out.reserve(entries_.size());
    for (const auto& [origin, entry] : entries_) out.push_back(entry);
    return out;
  }

  // What a reader observes at `now`: the entries that maintenance at `now`
  // would keep. Does not modify the view.
  std::vector<ViewEntry> snapshot(double now) const {
    if (std::holds_alternative<SizeBased>(policy_)) return entries();
    const double tau = std::get<TimeoutBased>(policy_).tau;
    std::vector<ViewEntry> out;
    for (const auto& [origin, entry] : entries_) {
      if (now - entry.last_time <= tau) out.push_back(entry);
    }
    return out;
  }

  std::size_t observed_size(double now) const {
    if (std::holds_alternative<SizeBased>(policy_)) return entries_.size();
    const double tau = std::get<TimeoutBased>(policy_).tau;
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [&](const auto& kv) {
      return now - kv.second.last_time <= tau;
    }));
  }

  // One entry per origin; a refresh overwrites value and timestamp.
  void upsert(const ViewEntry& entry) { entries_.insert_or_assign(entry.origin, entry); }

  void maintain(double now) {
    if (const auto* t = std::get_if<TimeoutBased>(&policy_)) {
      std::erase_if(entries_, [&](const auto& kv) { return now - kv.second.last_time > t->tau; });
      return;
    }
    const std::size_t k = std::get<SizeBased>(policy_).k;
    while (entries_.size() > k) {
      // Oldest last_time goes first; on ties the smaller origin (map order
      // plus strict '<' keeps the first minimum).
      auto oldest = entries_.begin();
      for (auto it = std::next(entries_.begin()); it != entries_.end(); ++it) {
        if (it->second.last_time < oldest->second.last_time) oldest = it;
      }
      entries_.erase(oldest);
    }
  }

 private:
  NodeId owner_ = 0;
  ViewPolicy policy_ = SizeBased{1};
  std::map<NodeId, ViewEntry> entries_;
};

inline void maintain_view(View& view, double now) { view.maintain(now); }

inline void publish_view(View& storage, const ViewEntry& entry, double now) {
  storage.upsert(entry);
  storage.maintain(now);
}

struct RWMessage {
  NodeId origin = 0;
  std::uint32_t ttl = 0;
  double launch_time = 0.0;
  Reading data_value = 0;

  friend bool operator==(const RWMessage&, const RWMessage&) = default;
};

// Neighbours heard via hello packets, sorted by id, with last-heard time.
class NeighborTable {
 public:
  NeighborTable() = default;
  explicit NeighborTable(NodeId owner) : owner_(owner) {}

  NodeId owner() const noexcept { return owner_; }
  std::size_t size() const noexcept { return known_.size(); }
  bool empty() const noexcept { return known_.empty(); }
  NodeId at(std::size_t i) const { return known_.at(i).first; }

  bool knows(NodeId id) const {
    const auto it = lower(id);
    return it != known_.end() && it->first == id;
  }

  std::optional<double> last_heard(NodeId id) const {
    const auto it = lower(id);
    if (it == known_.end() || it->first != id) return std::nullopt;
    return it->second;
  }

  void record(NodeId id, double now) {
    auto it = std::lower_bound(known_.begin(), known_.end(), id,
                               [](const auto& kv, NodeId v) { return kv.first < v; });
    if (it != known_.end() && it->first == id) {
      it->second = now;
    } else {
      known_.insert(it, {id, now});
    }
  }

 private:
  std::vector<std::pair<NodeId, double>>::const_iterator lower(NodeId id) const {
    return std::lower_bound(known_.begin(), known_.end(), id,
                            [](const auto& kv, NodeId v) { return kv.first < v; });
  }

  NodeId owner_ = 0;
  std::vector<std::pair<NodeId, double>> known_;
};

template <typename F>
concept StateOracle = std::invocable<F, NodeId> &&
                      std::convertible_to<std::invoke_result_t<F, NodeId>, NodeState>;

// Launch gated on the origin being awake; a sleeping origin skips this round.
inline std::optional<RWMessage> launch_rw(NodeId origin, double now, std::uint32_t walk_length,
                                          Reading reading, NodeState origin_state) {
  if (origin_state != NodeState::Active) return std::nullopt;
  return RWMessage{origin, walk_length, now, reading};
}

// Chooses one known neighbour (uniformly when there are several) and
// forwards to it only if it is awake; otherwise the walk stays put.
template <StateOracle States>
NodeId pick_next(NodeId node, const NeighborTable& table, States&& state_of, RngStream& rng) {
  if (table.empty()) return node;
  const NodeId candidate =
      table.size() == 1 ? table.at(0) : table.at(static_cast<std::size_t>(rng.uniform_index(table.size())));
  return state_of(candidate) == NodeState::Active ? candidate : node;
}

struct HopResult {
  NodeId next = 0;
  RWMessage msg;
  bool terminated = false;
};

// One step of a walk. The ttl pays for every invocation, moved or stalled,
// so a walk of length d performs exactly d steps. On termination `next` is
// the storage node.
template <StateOracle States>
HopResult hop(const RWMessage& msg, NodeId current, const NeighborTable& table, States&& state_of,
              RngStream& rng) {
  if (msg.ttl == 0) return {current, msg, true};
  HopResult out{pick_next(current, table, state_of, rng), msg, false};
  out.msg.ttl -= 1;
  out.terminated = out.msg.ttl == 0;
  return out;
}

// If `sender` is awake, every awake topological neighbour records it.
// Returns the owners of the tables that changed.
template <StateOracle States>
std::vector<NodeId> hello_tick(NodeId sender, double now, const Topology& topo, States&& state_of,
                               std::span<NeighborTable> tables) {
  std::vector<NodeId> updated;
  if (state_of(sender) != NodeState::Active) return updated;
  for (NodeId receiver : topo.neighbors(sender)) {
    if (state_of(receiver) != NodeState::Active) continue;
    tables[receiver].record(sender, now);
    updated.push_back(receiver);
  }
  return updated;
}

}  // namespace rwsink
