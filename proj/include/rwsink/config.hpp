#pragma once

// SimConfig and its flat key-value text form.
//
// File format: one "key = value" per line; '#' starts a comment; blank lines
// are ignored. Keys (defaults in brackets):
//
//   n [100]  width_m [1000]  height_m [1000]  radio_range_m [250]
//   placement_file []  fixed_topology [false]  require_connected [false]
//   t_active_s [1]  t_sleep_s [9]  timeout_min_s [0]  timeout_max_s [auto: U]
//   delta            (write-only: keeps U and sets t_active_s/t_sleep_s)
//   dissemination [true]  false runs the duty cycle (and sink) only
//   rw_length [n/2]  one of n, n/2, n/4 or an explicit hop count
//   view_policy [size:sqrt]  size:<k> | size:sqrt | timeout:<seconds>
//   hello_interval_s [1]  hop_latency_s [0.01]  advertise_period_s [auto: U]
//   maintenance_interval_s [1]
//   sink_visits [auto: ceil(sqrt(n))]  sink_gap_s [auto: U]
//   sink_start_s [auto: horizon - visits * gap, floored at 0]
//   sink_wake_sleeping [true]
//   horizon_s [500]  seed [1]  replications [15]  threads [1]

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwsink/dissemination.hpp"
#include "rwsink/dutycycle.hpp"
#include "rwsink/error.hpp"

namespace rwsink {

struct WalkLength {
  enum class Kind { Full, Half, Quarter, Explicit };
  Kind kind = Kind::Half;
  std::uint32_t hops = 0;

  std::uint32_t resolve(std::size_t n) const {
    switch (kind) {
      case Kind::Full: return static_cast<std::uint32_t>(n);
      case Kind::Half: return static_cast<std::uint32_t>(n / 2);
      case Kind::Quarter: return static_cast<std::uint32_t>(n / 4);
      case Kind::Explicit: return hops;
    }
    return hops;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Full: return "n";
      case Kind::Half: return "n/2";
      case Kind::Quarter: return "n/4";
      case Kind::Explicit: return std::to_string(hops);
    }
    return {};
  }

  friend bool operator==(const WalkLength&, const WalkLength&) = default;
};

struct SimConfig {
  // topology
  std::size_t n = 100;
  double width = 1000.0;
  double height = 1000.0;
  double radio_range = 250.0;
  std::string placement_file;
  bool fixed_topology = false;
  bool require_connected = false;

  // duty cycle
  double t_active = 1.0;
  double t_sleep = 9.0;
  double timeout_min = 0.0;
  std::optional<double> timeout_max;

  // dissemination
  bool dissemination = true;
  WalkLength rw_length;
  std::optional<std::size_t> view_size;  // size-based k; nullopt = ceil(sqrt(n))
  std::optional<double> view_timeout;    // set => timeout-based policy
  double hello_interval = 1.0;
  double hop_latency = 0.01;
  std::optional<double> advertise_period;
  double maintenance_interval = 1.0;

  // sink
  std::optional<std::size_t> sink_visits;
  std::optional<double> sink_gap;
  std::optional<double> sink_start;
  bool sink_wake_sleeping = true;

  // run
  double horizon = 500.0;
  std::uint64_t seed = 1;
  std::size_t replications = 15;
  std::size_t threads = 1;

  double period() const noexcept { return t_active + t_sleep; }

  DutyCycleConfig duty_cycle() const {
    return {t_active, t_sleep, timeout_min, timeout_max.value_or(period())};
  }

  ViewPolicy view_policy() const {
    if (view_timeout) return TimeoutBased{*view_timeout};
    return SizeBased{view_size.value_or(sqrt_ceil(n))};
  }

  std::uint32_t walk_hops() const { return rw_length.resolve(n); }
  double advertise() const { return advertise_period.value_or(period()); }
  std::size_t visits() const { return sink_visits.value_or(sqrt_ceil(n)); }
  double visit_gap() const { return sink_gap.value_or(period()); }
  double visit_start() const {
    if (sink_start) return *sink_start;
    return std::max(0.0, horizon - static_cast<double>(visits()) * visit_gap());
  }

  static std::size_t sqrt_ceil(std::size_t n) {
    auto r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    while (r * r < n) ++r;
    return std::max<std::size_t>(r, 1);
  }

  void validate() const {
    if (n == 0) throw ConfigError("n must be >= 1");
    if (placement_file.empty() && (!(width > 0.0) || !(height > 0.0))) {
      throw ConfigError("field dimensions must be positive");
    }
    if (!(radio_range > 0.0)) throw ConfigError("radio_range_m must be > 0");
    duty_cycle().validate();
    validate_policy();
    if (!(hello_interval > 0.0)) throw ConfigError("hello_interval_s must be > 0");
    if (hop_latency < 0.0) throw ConfigError("hop_latency_s must be >= 0");
    if (!(advertise() > 0.0)) throw ConfigError("advertise_period_s must be > 0");
    if (!(maintenance_interval > 0.0)) throw ConfigError("maintenance_interval_s must be > 0");
    if (visits() == 0) throw ConfigError("sink_visits must be >= 1");
    if (visit_gap() < 0.0) throw ConfigError("sink_gap_s must be >= 0");
    if (visit_start() < 0.0) throw ConfigError("sink_start_s must be >= 0");
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon_s must be >= 0");
    if (replications == 0) throw ConfigError("replications must be >= 1");
  }

 private:
  void validate_policy() const { rwsink::validate(view_policy()); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError("non-finite value for " + std::string(key));
  }
  return value;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("bad boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline bool is_auto(std::string_view text) { return text == "auto" || text.empty(); }

}  // namespace detail

// Every key accepted by apply_setting, in documentation order.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n", "width_m", "height_m", "radio_range_m", "placement_file", "fixed_topology",
      "require_connected", "t_active_s", "t_sleep_s", "timeout_min_s", "timeout_max_s", "delta",
      "dissemination", "rw_length", "view_policy", "hello_interval_s", "hop_latency_s", "advertise_period_s",
      "maintenance_interval_s", "sink_visits", "sink_gap_s", "sink_start_s", "sink_wake_sleeping",
      "horizon_s", "seed", "replications", "threads"};
  return keys;
}

inline void apply_setting(SimConfig& cfg, std::string_view key, std::string_view raw) {
  using detail::is_auto;
  using detail::parse_bool;
  using detail::parse_number;
  const std::string_view value = detail::trim(raw);

  if (key == "n") {
    cfg.n = parse_number<std::size_t>(key, value);
  } else if (key == "width_m") {
    cfg.width = parse_number<double>(key, value);
  } else if (key == "height_m") {
    cfg.height = parse_number<double>(key, value);
  } else if (key == "radio_range_m") {
    cfg.radio_range = parse_number<double>(key, value);
  } else if (key == "placement_file") {
    cfg.placement_file = std::string(value);
  } else if (key == "fixed_topology") {
    cfg.fixed_topology = parse_bool(key, value);
  } else if (key == "require_connected") {
    cfg.require_connected = parse_bool(key, value);
  } else if (key == "t_active_s") {
    cfg.t_active = parse_number<double>(key, value);
  } else if (key == "t_sleep_s") {
    cfg.t_sleep = parse_number<double>(key, value);
  } else if (key == "timeout_min_s") {
    cfg.timeout_min = parse_number<double>(key, value);
  } else if (key == "timeout_max_s") {
    cfg.timeout_max = is_auto(value) ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "delta") {
    const auto d = parse_number<double>(key, value);
    const auto split = DutyCycleConfig::with_delta(d, cfg.period(), 0.0, 0.0);
    cfg.t_active = split.t_active;
    cfg.t_sleep = split.t_sleep;
  } else if (key == "dissemination") {
    cfg.dissemination = parse_bool(key, value);
  } else if (key == "rw_length") {
    if (value == "n") {
      cfg.rw_length = {WalkLength::Kind::Full, 0};
    } else if (value == "n/2") {
      cfg.rw_length = {WalkLength::Kind::Half, 0};
    } else if (value == "n/4") {
      cfg.rw_length = {WalkLength::Kind::Quarter, 0};
    } else {
      cfg.rw_length = {WalkLength::Kind::Explicit, parse_number<std::uint32_t>(key, value)};
    }
  } else if (key == "view_policy") {
    const auto colon = value.find(':');
    const auto kind = value.substr(0, colon);
    const auto arg = colon == std::string_view::npos ? std::string_view{} : value.substr(colon + 1);
    if (kind == "size") {
      cfg.view_timeout.reset();
      if (arg.empty() || arg == "sqrt" || arg == "auto") {
        cfg.view_size.reset();
      } else {
        cfg.view_size = parse_number<std::size_t>(key, arg);
        if (*cfg.view_size == 0) throw ConfigError("view_policy size:k needs k >= 1");
      }
    } else if (kind == "timeout") {
      const auto tau = parse_number<double>(key, arg);
      if (!(tau > 0.0)) throw ConfigError("view_policy timeout:tau needs tau > 0");
      cfg.view_timeout = tau;
    } else {
      throw ConfigError("view_policy must be size:<k> or timeout:<seconds>, got '" +
                        std::string(value) + "'");
    }
  } else if (key == "hello_interval_s") {
    cfg.hello_interval = parse_number<double>(key, value);
  } else if (key == "hop_latency_s") {
    cfg.hop_latency = parse_number<double>(key, value);
  } else if (key == "advertise_period_s") {
    cfg.advertise_period =
        is_auto(value) ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "maintenance_interval_s") {
    cfg.maintenance_interval = parse_number<double>(key, value);
  } else if (key == "sink_visits") {
    cfg.sink_visits =
        is_auto(value) ? std::nullopt : std::optional(parse_number<std::size_t>(key, value));
  } else if (key == "sink_gap_s") {
    cfg.sink_gap = is_auto(value) ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "sink_start_s") {
    cfg.sink_start = is_auto(value) ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "sink_wake_sleeping") {
    cfg.sink_wake_sleeping = parse_bool(key, value);
  } else if (key == "horizon_s") {
    cfg.horizon = parse_number<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "replications") {
    cfg.replications = parse_number<std::size_t>(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_number<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

inline SimConfig parse_config(std::string_view text, SimConfig cfg = {}) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const auto key = detail::trim(line.substr(0, eq));
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return cfg;
}

inline SimConfig load_config_file(const std::string& path, SimConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(cfg));
}

// Settings as written, auto values spelled "auto". parse_config of the
// joined output reproduces the config.
inline std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg) {
  using detail::format_double;
  const auto opt_d = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("auto");
  };
  const auto opt_z = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("auto");
  };
  std::string policy = cfg.view_timeout ? "timeout:" + format_double(*cfg.view_timeout)
                                        : "size:" + (cfg.view_size ? std::to_string(*cfg.view_size)
                                                                   : std::string("sqrt"));
  return {
      {"n", std::to_string(cfg.n)},
      {"width_m", format_double(cfg.width)},
      {"height_m", format_double(cfg.height)},
      {"radio_range_m", format_double(cfg.radio_range)},
      {"placement_file", cfg.placement_file},
      {"fixed_topology", cfg.fixed_topology ? "true" : "false"},
      {"require_connected", cfg.require_connected ? "true" : "false"},
      {"t_active_s", format_double(cfg.t_active)},
      {"t_sleep_s", format_double(cfg.t_sleep)},
      {"timeout_min_s", format_double(cfg.timeout_min)},
      {"timeout_max_s", opt_d(cfg.timeout_max)},
      {"dissemination", cfg.dissemination ? "true" : "false"},
      {"rw_length", cfg.rw_length.to_string()},
      {"view_policy", policy},
      {"hello_interval_s", format_double(cfg.hello_interval)},
      {"hop_latency_s", format_double(cfg.hop_latency)},
      {"advertise_period_s", opt_d(cfg.advertise_period)},
      {"maintenance_interval_s", format_double(cfg.maintenance_interval)},
      {"sink_visits", opt_z(cfg.sink_visits)},
      {"sink_gap_s", opt_d(cfg.sink_gap)},
      {"sink_start_s", opt_d(cfg.sink_start)},
      {"sink_wake_sleeping", cfg.sink_wake_sleeping ? "true" : "false"},
      {"horizon_s", format_double(cfg.horizon)},
      {"seed", std::to_string(cfg.seed)},
      {"replications", std::to_string(cfg.replications)},
      {"threads", std::to_string(cfg.threads)},
  };
}

inline std::string format_config(const SimConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_entries(cfg)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace rwsink
