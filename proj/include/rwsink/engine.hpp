#pragma once

// Deterministic discrete-event core. Events are dispatched in (time, seq)
// order where seq is assigned when an event is scheduled. Per-node duty
// cycle transitions are all scheduled up front, before any protocol event,
// so at equal timestamps a node's state change is always seen first.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rwsink/config.hpp"
#include "rwsink/dissemination.hpp"
#include "rwsink/dutycycle.hpp"
#include "rwsink/error.hpp"
#include "rwsink/rng.hpp"
#include "rwsink/sink.hpp"
#include "rwsink/topology.hpp"

namespace rwsink {

enum class EventKind : std::uint8_t {
  StateToggle,
  HelloTick,
  RWLaunch,
  RWHop,
  SinkVisit,
  MaintenanceTick,
};

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::StateToggle;
  // Node id, in-flight walk slot, or plan index depending on kind.
  std::uint32_t target = 0;
  // Tick number for periodic events; new state for toggles.
  std::uint64_t index = 0;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const noexcept {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct EventCounts {
  std::uint64_t dispatched = 0;
  std::uint64_t state_toggles = 0;
  std::uint64_t hello_ticks = 0;
  std::uint64_t hellos_sent = 0;
  std::uint64_t hello_receptions = 0;
  std::uint64_t launches = 0;
  std::uint64_t launches_skipped = 0;
  std::uint64_t hops_moved = 0;
  std::uint64_t hops_stalled = 0;
  std::uint64_t depositions = 0;
  std::uint64_t dropped_in_flight = 0;
  std::uint64_t sink_visits = 0;
  std::uint64_t maintenance_ticks = 0;

  friend bool operator==(const EventCounts&, const EventCounts&) = default;
};

struct RunTrace {
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::size_t n = 0;
  // One sample per whole second, t = 0 .. floor(horizon).
  std::vector<std::uint32_t> active_samples;
  // view_sizes[sample][node]
  std::vector<std::vector<std::uint32_t>> view_sizes;
  SinkReport sink;
  EventCounts counts;
  DegreeStats degrees;
  // Time-averaged active count; see Simulation::active_window.
  double mean_active = 0.0;

  bool quiescent() const noexcept { return counts.dropped_in_flight == 0; }
};

// Topology for a run: from the placement file when one is configured,
// otherwise uniform placement drawn from the run's placement stream.
inline std::shared_ptr<const Topology> make_topology(const SimConfig& cfg, std::uint64_t seed) {
  std::vector<Position> positions;
  if (!cfg.placement_file.empty()) {
    std::ifstream in(cfg.placement_file);
    if (!in) throw ConfigError("cannot open placement file '" + cfg.placement_file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    positions = load_placement(buf.str());
    if (positions.size() != cfg.n) {
      throw ConfigError("placement file has " + std::to_string(positions.size()) +
                        " nodes but n = " + std::to_string(cfg.n));
    }
  } else {
    auto rng = rng_stream(seed, stream::kPlacement);
    positions = place_uniform(cfg.n, cfg.width, cfg.height, rng);
  }
  return std::make_shared<const Topology>(
      build_adjacency(std::move(positions), cfg.radio_range, cfg.width, cfg.height));
}

class Simulation {
 public:
  using HopObserver = std::function<void(const RWMessage&, NodeId from, NodeId to, double now)>;
  using DepositObserver = std::function<void(const View&, double now)>;

  Simulation(SimConfig cfg, std::uint64_t seed, std::shared_ptr<const Topology> topology = nullptr)
      : cfg_(std::move(cfg)), seed_(seed), topo_(std::move(topology)), walk_rng_(rng_stream(seed, stream::kWalks)) {
    cfg_.validate();
    if (!topo_) topo_ = make_topology(cfg_, seed_);
    if (topo_->size() != cfg_.n) throw ConfigError("topology size does not match n");
    degrees_ = degree_stats(*topo_);
    if (cfg_.require_connected && !degrees_.connected) {
      throw SetupError("topology is not connected (seed " + std::to_string(seed_) + ")");
    }
    duty_ = cfg_.duty_cycle();
    auto phase_rng = rng_stream(seed_, stream::kPhases);
    schedules_ = draw_schedules(cfg_.n, duty_, phase_rng);
    auto sink_rng = rng_stream(seed_, stream::kSinkPlan);
    plan_ = plan_random_visits(cfg_.n, cfg_.visits(), cfg_.visit_start(), cfg_.visit_gap(), sink_rng);

    states_.assign(cfg_.n, NodeState::Timeout);
    readings_.assign(cfg_.n, 0);
    tables_.reserve(cfg_.n);
    views_.reserve(cfg_.n);
    for (NodeId i = 0; i < cfg_.n; ++i) {
      tables_.emplace_back(i);
      views_.emplace_back(i, cfg_.view_policy());
    }
    sink_ = SinkReport(cfg_.n);
  }

  void set_hop_observer(HopObserver f) { hop_observer_ = std::move(f); }
  void set_deposit_observer(DepositObserver f) { deposit_observer_ = std::move(f); }

  const Topology& topology() const noexcept { return *topo_; }
  const std::vector<NodeSchedule>& schedules() const noexcept { return schedules_; }
  const VisitPlan& plan() const noexcept { return plan_; }
  const std::vector<NodeState>& states() const noexcept { return states_; }
  const std::vector<NeighborTable>& tables() const noexcept { return tables_; }
  const std::vector<View>& views() const noexcept { return views_; }

  // Averaging window for mean_active: whole periods starting once every
  // initial timeout has expired. Returns [first, end) in sample indices.
  std::pair<std::size_t, std::size_t> active_window() const {
    const auto samples = static_cast<std::size_t>(std::floor(cfg_.horizon)) + 1;
    const double warmup = std::ceil(duty_.timeout_max);
    if (warmup > cfg_.horizon) return {0, samples};
    const double periods = std::floor((cfg_.horizon - warmup) / duty_.period());
    const auto first = static_cast<std::size_t>(warmup);
    if (periods < 1.0) return {first, samples};
    const double end = warmup + periods * duty_.period();
    std::size_t last = first;
    while (last < samples && static_cast<double>(last) < end) ++last;
    return {first, last};
  }

  RunTrace run() {
    if (ran_) throw SetupError("Simulation::run called twice");
    ran_ = true;
    trace_.seed = seed_;
    trace_.horizon = cfg_.horizon;
    trace_.n = cfg_.n;
    trace_.degrees = degrees_;
    schedule_initial();

    const auto samples = static_cast<std::size_t>(std::floor(cfg_.horizon)) + 1;
    std::size_t next_sample = 0;
    while (!queue_.empty() && queue_.top().time <= cfg_.horizon) {
      const Event ev = queue_.top();
      queue_.pop();
      while (next_sample < samples && static_cast<double>(next_sample) < ev.time) {
        take_sample(next_sample++);
      }
      dispatch(ev);
    }
    while (next_sample < samples) take_sample(next_sample++);

    trace_.counts.dropped_in_flight = live_walks_;
    trace_.sink = sink_;
    const auto [first, end] = active_window();
    double sum = 0.0;
    for (std::size_t s = first; s < end; ++s) sum += trace_.active_samples[s];
    trace_.mean_active = end > first ? sum / static_cast<double>(end - first) : 0.0;
    return trace_;
  }

 private:
  struct InFlight {
    RWMessage msg;
    NodeId at = 0;
    bool live = false;
  };

  void push(double time, EventKind kind, std::uint32_t target, std::uint64_t index) {
    queue_.push(Event{time, next_seq_++, kind, target, index});
  }

  void schedule_initial() {
    const double horizon = cfg_.horizon;
    const double period = duty_.period();
    for (const auto& s : schedules_) {
      for (std::uint64_t k = 0;; ++k) {
        const double wake = s.phase + static_cast<double>(k) * period;
        if (wake > horizon) break;
        push(wake, EventKind::StateToggle, s.node, static_cast<std::uint64_t>(NodeState::Active));
        if (duty_.t_sleep <= 0.0) break;
        const double sleep = wake + duty_.t_active;
        if (sleep > horizon) break;
        push(sleep, EventKind::StateToggle, s.node, static_cast<std::uint64_t>(NodeState::Sleep));
      }
    }
    for (std::uint32_t i = 0; i < plan_.size(); ++i) {
      if (plan_[i].time <= horizon) push(plan_[i].time, EventKind::SinkVisit, i, 0);
    }
    if (!cfg_.dissemination) return;
    const bool timeout_views = std::holds_alternative<TimeoutBased>(cfg_.view_policy());
    for (const auto& s : schedules_) {
      schedule_hello(s.node, 0);
      schedule_launch(s.node, 1);
      if (timeout_views) schedule_maintenance(s.node, 1);
    }
  }

  void schedule_hello(NodeId node, std::uint64_t k) {
    const double t = schedules_[node].phase + (static_cast<double>(k) + 0.5) * cfg_.hello_interval;
    if (t <= cfg_.horizon) push(t, EventKind::HelloTick, node, k);
  }

  void schedule_launch(NodeId node, std::uint64_t k) {
    const double t = schedules_[node].phase + static_cast<double>(k) * cfg_.advertise();
    if (t <= cfg_.horizon) push(t, EventKind::RWLaunch, node, k);
  }

  void schedule_maintenance(NodeId node, std::uint64_t k) {
    const double t = schedules_[node].phase + static_cast<double>(k) * cfg_.maintenance_interval;
    if (t <= cfg_.horizon) push(t, EventKind::MaintenanceTick, node, k);
  }

  NodeState state_of(NodeId id) const { return states_[id]; }

  void dispatch(const Event& ev) {
    ++trace_.counts.dispatched;
    switch (ev.kind) {
      case EventKind::StateToggle:
        ++trace_.counts.state_toggles;
        states_[ev.target] = static_cast<NodeState>(ev.index);
        break;
      case EventKind::HelloTick: on_hello(ev); break;
      case EventKind::RWLaunch: on_launch(ev); break;
      case EventKind::RWHop: on_hop(ev); break;
      case EventKind::SinkVisit: on_visit(ev); break;
      case EventKind::MaintenanceTick:
        ++trace_.counts.maintenance_ticks;
        maintain_view(views_[ev.target], ev.time);
        schedule_maintenance(ev.target, ev.index + 1);
        break;
    }
  }

  void on_hello(const Event& ev) {
    ++trace_.counts.hello_ticks;
    schedule_hello(ev.target, ev.index + 1);
    if (states_[ev.target] != NodeState::Active) return;
    ++trace_.counts.hellos_sent;
    const auto updated = hello_tick(ev.target, ev.time, *topo_, [this](NodeId id) { return state_of(id); },
                                    std::span<NeighborTable>(tables_));
    trace_.counts.hello_receptions += updated.size();
  }

  void on_launch(const Event& ev) {
    const NodeId origin = ev.target;
    schedule_launch(origin, ev.index + 1);
    const auto msg = launch_rw(origin, ev.time, cfg_.walk_hops(), readings_[origin] + 1, states_[origin]);
    if (!msg) {
      ++trace_.counts.launches_skipped;
      return;
    }
    ++readings_[origin];
    ++trace_.counts.launches;
    if (msg->ttl == 0) {
      deposit(origin, *msg, ev.time);
      return;
    }
    std::uint32_t slot;
    if (!free_slots_.empty()) {
      slot = free_slots_.back();
      free_slots_.pop_back();
    } else {
      slot = static_cast<std::uint32_t>(walks_.size());
      walks_.emplace_back();
    }
    walks_[slot] = InFlight{*msg, origin, true};
    ++live_walks_;
    push(ev.time, EventKind::RWHop, slot, 0);
  }

  void on_hop(const Event& ev) {
    InFlight& walk = walks_[ev.target];
    const NodeId from = walk.at;
    const auto step =
        hop(walk.msg, from, tables_[from], [this](NodeId id) { return state_of(id); }, walk_rng_);
    if (step.next == from) {
      ++trace_.counts.hops_stalled;
    } else {
      ++trace_.counts.hops_moved;
    }
    if (hop_observer_) hop_observer_(walk.msg, from, step.next, ev.time);
    walk.msg = step.msg;
    walk.at = step.next;
    if (step.terminated) {
      deposit(step.next, walk.msg, ev.time);
      walk.live = false;
      --live_walks_;
      free_slots_.push_back(ev.target);
      return;
    }
    push(ev.time + cfg_.hop_latency, EventKind::RWHop, ev.target, 0);
  }

  void deposit(NodeId storage, const RWMessage& msg, double now) {
    ++trace_.counts.depositions;
    publish_view(views_[storage], ViewEntry{msg.origin, msg.data_value, now}, now);
    if (deposit_observer_) deposit_observer_(views_[storage], now);
  }

  void on_visit(const Event& ev) {
    ++trace_.counts.sink_visits;
    const auto& planned = plan_[ev.target];
    const NodeId node = planned.node;
    if (!cfg_.sink_wake_sleeping && states_[node] != NodeState::Active) {
      sink_.record_missed(node, ev.time);
      return;
    }
    const auto collected = visit(node, readings_[node], views_[node], ev.time);
    sink_.absorb(node, ev.time, collected);
  }

  void take_sample(std::size_t s) {
    const auto t = static_cast<double>(s);
    std::uint32_t active = 0;
    for (const auto& sched : schedules_) {
      if (state_at(sched, duty_, t) == NodeState::Active) ++active;
    }
    trace_.active_samples.push_back(active);
    std::vector<std::uint32_t> sizes(cfg_.n);
    for (NodeId i = 0; i < cfg_.n; ++i) {
      sizes[i] = static_cast<std::uint32_t>(views_[i].observed_size(t));
    }
    trace_.view_sizes.push_back(std::move(sizes));
  }

  SimConfig cfg_;
  std::uint64_t seed_;
  std::shared_ptr<const Topology> topo_;
  DegreeStats degrees_;
  DutyCycleConfig duty_;
  std::vector<NodeSchedule> schedules_;
  VisitPlan plan_;

  std::vector<NodeState> states_;
  std::vector<Reading> readings_;
  std::vector<NeighborTable> tables_;
  std::vector<View> views_;
  SinkReport sink_;

  std::priority_queue<Event, std::vector<Event>, EventLater> queue_;
  std::uint64_t next_seq_ = 0;
  std::vector<InFlight> walks_;
  std::vector<std::uint32_t> free_slots_;
  std::uint64_t live_walks_ = 0;
  RngStream walk_rng_;

  HopObserver hop_observer_;
  DepositObserver deposit_observer_;
  RunTrace trace_;
  bool ran_ = false;
};

inline RunTrace run(const SimConfig& cfg) { return Simulation(cfg, cfg.seed).run(); }

// ---------------------------------------------------------------------------
// Replication

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample stddev (n - 1); 0 for a single run
};

// Named scalar metrics of one run. Visit-indexed metrics use a 1-based
// "@i" suffix: coverage@1, collected@1, ...
inline std::map<std::string, double> run_metrics(const RunTrace& trace) {
  std::map<std::string, double> m;
  m["mean_active"] = trace.mean_active;
  m["launches"] = static_cast<double>(trace.counts.launches);
  m["launches_skipped"] = static_cast<double>(trace.counts.launches_skipped);
  m["depositions"] = static_cast<double>(trace.counts.depositions);
  m["dropped_in_flight"] = static_cast<double>(trace.counts.dropped_in_flight);
  m["hops_moved"] = static_cast<double>(trace.counts.hops_moved);
  m["hops_stalled"] = static_cast<double>(trace.counts.hops_stalled);
  m["hellos_sent"] = static_cast<double>(trace.counts.hellos_sent);
  m["coverage"] = trace.sink.coverage();
  m["collected"] = static_cast<double>(trace.sink.known_count());
  m["mean_degree"] = trace.degrees.mean;
  m["connected"] = trace.degrees.connected ? 1.0 : 0.0;
  double view_total = 0.0;
  if (!trace.view_sizes.empty()) {
    for (auto v : trace.view_sizes.back()) view_total += v;
    m["final_mean_view_size"] = view_total / static_cast<double>(trace.n);
  }
  const auto& visits = trace.sink.visits();
  for (std::size_t i = 0; i < visits.size(); ++i) {
    const auto suffix = "@" + std::to_string(i + 1);
    m["collected" + suffix] = static_cast<double>(visits[i].cumulative_origins);
    m["coverage" + suffix] =
        static_cast<double>(visits[i].cumulative_origins) / static_cast<double>(trace.n);
  }
  return m;
}

struct ReplicationResult {
  std::size_t runs = 0;
  std::uint64_t base_seed = 0;
  std::map<std::string, MetricSummary> metrics;
  std::vector<std::map<std::string, double>> per_run;

  const MetricSummary& at(const std::string& name) const {
    const auto it = metrics.find(name);
    if (it == metrics.end()) throw ConfigError("unknown metric '" + name + "'");
    return it->second;
  }
};

inline MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

// Runs with seeds seed+0 .. seed+runs-1. With fixed_topology every run
// shares the placement drawn from the base seed. Runs are independent, so
// they may execute on cfg.threads worker threads; results are merged in
// seed order and do not depend on the thread count.
inline ReplicationResult replicate(const SimConfig& cfg, std::size_t runs) {
  if (runs == 0) throw ConfigError("replicate: runs must be >= 1");
  cfg.validate();
  std::shared_ptr<const Topology> shared;
  if (cfg.fixed_topology || !cfg.placement_file.empty()) shared = make_topology(cfg, cfg.seed);

  std::vector<std::map<std::string, double>> per_run(runs);
  std::vector<std::exception_ptr> errors(runs);
  const auto work = [&](std::size_t r) {
    try {
      Simulation sim(cfg, cfg.seed + r, shared);
      per_run[r] = run_metrics(sim.run());
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, runs));
  if (threads == 1) {
    for (std::size_t r = 0; r < runs; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < runs; r += threads) work(r);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ReplicationResult out;
  out.runs = runs;
  out.base_seed = cfg.seed;
  std::map<std::string, std::vector<double>> columns;
  for (const auto& m : per_run) {
    for (const auto& [k, v] : m) columns[k].push_back(v);
  }
  for (const auto& [k, values] : columns) out.metrics[k] = summarize(values);
  out.per_run = std::move(per_run);
  return out;
}

}  // namespace rwsink
