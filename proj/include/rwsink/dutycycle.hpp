#pragma once

// Active/sleep regime. Each node waits an initial timeout (its phase), then
// alternates t_active seconds awake and t_sleep seconds asleep with period
// U = t_active + t_sleep. Phases are independent and uniform, so nodes are
// not synchronised.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rwsink/error.hpp"
#include "rwsink/rng.hpp"
#include "rwsink/topology.hpp"

namespace rwsink {

enum class NodeState { Timeout, Active, Sleep };

inline const char* to_string(NodeState s) noexcept {
  switch (s) {
    case NodeState::Timeout: return "TIMEOUT";
    case NodeState::Active: return "ACTIVE";
    case NodeState::Sleep: return "SLEEP";
  }
  return "?";
}

inline double delta(double t_active, double t_sleep) {
  if (!(t_active > 0.0)) throw ConfigError("t_active must be > 0");
  if (t_sleep < 0.0) throw ConfigError("t_sleep must be >= 0");
  return t_sleep / (t_active + t_sleep);
}

struct DutyCycleConfig {
  double t_active = 1.0;
  double t_sleep = 9.0;
  // Initial timeouts are drawn uniformly from [timeout_min, timeout_max].
  double timeout_min = 0.0;
  double timeout_max = 10.0;

  double period() const noexcept { return t_active + t_sleep; }
  double sleep_fraction() const { return delta(t_active, t_sleep); }

  void validate() const {
    (void)sleep_fraction();
    if (timeout_min < 0.0) throw ConfigError("timeout_min must be >= 0");
    if (timeout_max < timeout_min) throw ConfigError("timeout_max must be >= timeout_min");
  }

  // Keeps U fixed and splits it so that t_sleep / U == d.
  static DutyCycleConfig with_delta(double d, double period, double timeout_min,
                                    double timeout_max) {
    if (!(d >= 0.0 && d < 1.0)) throw ConfigError("delta must lie in [0, 1)");
    if (!(period > 0.0)) throw ConfigError("period must be > 0");
    DutyCycleConfig cfg;
    cfg.t_sleep = d * period;
    cfg.t_active = period - cfg.t_sleep;
    cfg.timeout_min = timeout_min;
    cfg.timeout_max = timeout_max;
    cfg.validate();
    return cfg;
  }
};

struct NodeSchedule {
  NodeId node = 0;
  double phase = 0.0;
};

inline NodeState state_at(const NodeSchedule& schedule, const DutyCycleConfig& cfg, double t) {
  if (t < schedule.phase) return NodeState::Timeout;
  if (cfg.t_sleep <= 0.0) return NodeState::Active;
  const double offset = std::fmod(t - schedule.phase, cfg.period());
  return offset < cfg.t_active ? NodeState::Active : NodeState::Sleep;
}

inline std::vector<NodeSchedule> draw_schedules(std::size_t n, const DutyCycleConfig& cfg,
                                                RngStream& rng) {
  cfg.validate();
  std::vector<NodeSchedule> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].node = static_cast<NodeId>(i);
    out[i].phase = rng.uniform(cfg.timeout_min, cfg.timeout_max);
  }
  return out;
}

inline double expected_active(std::size_t n, double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  return (1.0 - d) * static_cast<double>(n);
}

// Inverse of expected_active: the sleep fraction at which (1 - delta) n
// equals target_active.
inline double delta_for_target(std::size_t n, std::size_t target_active) {
  if (target_active == 0) throw ConfigError("target active count must be >= 1");
  if (target_active > n) throw ConfigError("target active count exceeds node count");
  const double d = 1.0 - static_cast<double>(target_active) / static_cast<double>(n);
  return std::max(0.0, d);
}

}  // namespace rwsink
