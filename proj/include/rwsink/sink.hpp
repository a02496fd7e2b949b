#pragma once

// Mobile sink: visits a random sequence of nodes, reads each node's own
// reading plus its stored view, and tracks which origins it has learned.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "rwsink/dissemination.hpp"
#include "rwsink/error.hpp"
#include "rwsink/rng.hpp"
#include "rwsink/topology.hpp"

namespace rwsink {

struct PlannedVisit {
  NodeId node = 0;
  double time = 0.0;
};

using VisitPlan = std::vector<PlannedVisit>;

// m nodes without replacement; past n visits a fresh permutation starts.
inline VisitPlan plan_random_visits(std::size_t n, std::size_t m, double start_time, double gap,
                                    RngStream& rng) {
  if (n == 0) throw ConfigError("plan_random_visits: empty network");
  if (m == 0) throw ConfigError("plan_random_visits: visit count must be >= 1");
  if (gap < 0.0) throw ConfigError("plan_random_visits: gap must be >= 0");
  VisitPlan plan;
  plan.reserve(m);
  std::vector<NodeId> order(n);
  while (plan.size() < m) {
    std::iota(order.begin(), order.end(), NodeId{0});
    const std::size_t take = std::min(n, m - plan.size());
    // Partial Fisher-Yates: the first `take` slots are a uniform sample.
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
      std::swap(order[i], order[j]);
    }
    for (std::size_t i = 0; i < take; ++i) {
      const double t = start_time + static_cast<double>(plan.size()) * gap;
      plan.push_back({order[i], t});
    }
  }
  return plan;
}

// Everything the sink reads at `node`: the node's own reading first, then
// its view as observed at `now`.
inline std::vector<ViewEntry> visit(NodeId node, Reading own_reading, const View& view, double now) {
  std::vector<ViewEntry> out;
  out.push_back({node, own_reading, now});
  for (const auto& e : view.snapshot(now)) out.push_back(e);
  return out;
}

struct VisitRecord {
  NodeId node = 0;
  double time = 0.0;
  std::size_t entries_collected = 0;
  std::size_t new_origins = 0;
  std::size_t cumulative_origins = 0;
};

class SinkReport {
 public:
  SinkReport() = default;
  explicit SinkReport(std::size_t n) : n_(n), known_(n, false) {}

  std::size_t network_size() const noexcept { return n_; }
  const std::vector<VisitRecord>& visits() const noexcept { return visits_; }
  std::size_t known_count() const noexcept { return known_count_; }
  bool knows(NodeId id) const { return known_.at(id); }

  double coverage() const noexcept {
    return n_ == 0 ? 0.0 : static_cast<double>(known_count_) / static_cast<double>(n_);
  }

  std::vector<NodeId> known_origins() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < n_; ++i) {
      if (known_[i]) out.push_back(i);
    }
    return out;
  }

  void absorb(NodeId node, double time, std::span<const ViewEntry> collected) {
    VisitRecord rec{node, time, collected.size(), 0, 0};
    for (const auto& e : collected) {
      if (e.origin < n_ && !known_[e.origin]) {
        known_[e.origin] = true;
        ++known_count_;
        ++rec.new_origins;
      }
    }
    rec.cumulative_origins = known_count_;
    visits_.push_back(rec);
  }

  // A visit that found the node asleep in strict mode.
  void record_missed(NodeId node, double time) {
    visits_.push_back({node, time, 0, 0, known_count_});
  }

 private:
  std::size_t n_ = 0;
  std::vector<bool> known_;
  std::size_t known_count_ = 0;
  std::vector<VisitRecord> visits_;
};

// Analytic expectation after i visits with sqrt(n)-sized uniform views,
// capped at n.
inline double predicted_coverage(std::size_t i, std::size_t n) {
  const double raw = static_cast<double>(i) * (std::sqrt(static_cast<double>(n)) - 1.0);
  return std::min(static_cast<double>(n), raw);
}

// (visits so far, distinct origins known), one point per visit.
inline std::vector<std::pair<std::size_t, std::size_t>> coverage_curve(const SinkReport& report) {
  std::vector<std::pair<std::size_t, std::size_t>> curve;
  curve.reserve(report.visits().size());
  for (std::size_t i = 0; i < report.visits().size(); ++i) {
    curve.emplace_back(i + 1, report.visits()[i].cumulative_origins);
  }
  return curve;
}

}  // namespace rwsink
