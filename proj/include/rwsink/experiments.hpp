#pragma once

// Named experiments producing plot-ready datasets, and the figure suite.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <span>
#include <string_view>
#include <vector>

#include "rwsink/config.hpp"
#include "rwsink/dutycycle.hpp"
#include "rwsink/engine.hpp"
#include "rwsink/error.hpp"
#include "rwsink/report.hpp"
#include "rwsink/sink.hpp"

namespace rwsink {

// Radio range giving mean degree ~44 for 100 nodes on 550 x 550 m, from a
// brute-force sweep over random placements (re-derived in the test suite).
inline constexpr double kDenseRadioRange = 260.0;

struct FigureRow {
  std::string value;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t runs = 0;
  std::vector<double> extras;
};

struct FigureDataset {
  std::string name;
  std::string swept;        // first CSV column
  std::string mean_label;   // e.g. mean_active
  std::string stddev_label;
  std::vector<std::string> extra_labels;
  std::vector<FigureRow> rows;
};

struct ExperimentSpec {
  std::string name;
  SimConfig base;
  std::string param;
  std::vector<std::string> values;
  std::string metric = "mean_active";
  std::string output;
};

inline std::string to_csv(const FigureDataset& ds) {
  std::string out = ds.swept + "," + ds.mean_label + "," + ds.stddev_label;
  for (const auto& e : ds.extra_labels) out += "," + e;
  out += ",runs\n";
  for (const auto& row : ds.rows) {
    out += row.value + "," + fmt6(row.mean) + "," + fmt6(row.stddev);
    for (double e : row.extras) out += "," + fmt6(e);
    out += "," + std::to_string(row.runs) + "\n";
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

inline std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

namespace detail {

inline SimConfig with_delta(SimConfig cfg, double d) {
  const auto split = DutyCycleConfig::with_delta(d, cfg.period(), 0.0, 0.0);
  cfg.t_active = split.t_active;
  cfg.t_sleep = split.t_sleep;
  return cfg;
}

inline void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("delta grid is empty");
  for (double d : grid) {
    if (!(d >= 0.0 && d <= 0.95)) throw ConfigError("delta grid values must lie in [0, 0.95]");
  }
}

}  // namespace detail

// Time-averaged active-node count per sleep fraction. U is taken from the
// base config and kept fixed while delta varies.
inline FigureDataset exp_active_vs_delta(const SimConfig& base, std::size_t n,
                                         std::span<const double> grid) {
  detail::check_grid(grid);
  FigureDataset ds{"active_vs_delta_n" + std::to_string(n), "delta", "mean_active", "stddev_active",
                   {"n", "expected_active"}, {}};
  SimConfig cfg = base;
  cfg.n = n;
  for (double d : grid) {
    const auto result = replicate(detail::with_delta(cfg, d), cfg.replications);
    const auto& m = result.at("mean_active");
    ds.rows.push_back({fmt6(d), m.mean, m.stddev, result.runs,
                       {static_cast<double>(n), expected_active(n, d)}});
  }
  return ds;
}

// For each n, the largest grid delta whose measured mean active count is
// still >= sqrt(n). The grid is scanned from the top and stops at the first
// delta that qualifies.
inline FigureDataset exp_delta_for_sqrt_n(const SimConfig& base, std::span<const std::size_t> sizes,
                                          std::span<const double> grid) {
  detail::check_grid(grid);
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.rbegin(), sorted.rend());
  FigureDataset ds{"delta_for_sqrt_n", "n", "delta", "stddev_delta",
                   {"mean_active", "stddev_active", "sqrt_n", "expected_active"}, {}};
  for (std::size_t n : sizes) {
    if (n < 4) throw ConfigError("exp_delta_for_sqrt_n: each n must be >= 4");
    SimConfig cfg = base;
    cfg.n = n;
    const double target = std::sqrt(static_cast<double>(n));
    bool found = false;
    for (double d : sorted) {
      const auto result = replicate(detail::with_delta(cfg, d), cfg.replications);
      const auto& m = result.at("mean_active");
      // Tolerance absorbs rounding when the mean sits exactly on sqrt(n).
      if (m.mean + 1e-9 >= target) {
        ds.rows.push_back({std::to_string(n), d, 0.0, result.runs,
                           {m.mean, m.stddev, target, expected_active(n, d)}});
        found = true;
        break;
      }
    }
    if (!found) {
      ds.rows.push_back({std::to_string(n), std::nan(""), 0.0, cfg.replications,
                         {std::nan(""), std::nan(""), target, std::nan("")}});
    }
  }
  return ds;
}

enum class CoverageVariant { Normal, SmallTimeout, AllActive, Dense };

inline CoverageVariant parse_variant(std::string_view name) {
  if (name == "normal") return CoverageVariant::Normal;
  if (name == "small-timeout") return CoverageVariant::SmallTimeout;
  if (name == "all-active") return CoverageVariant::AllActive;
  if (name == "dense") return CoverageVariant::Dense;
  throw ConfigError("unknown coverage variant '" + std::string(name) +
                    "' (expected normal, small-timeout, all-active or dense)");
}

inline const char* to_string(CoverageVariant v) noexcept {
  switch (v) {
    case CoverageVariant::Normal: return "normal";
    case CoverageVariant::SmallTimeout: return "small-timeout";
    case CoverageVariant::AllActive: return "all-active";
    case CoverageVariant::Dense: return "dense";
  }
  return "?";
}

// n = 100, walk length n/2, size-based views of sqrt(n), U = 10 s, 1000 s.
// Run-control fields (seed, replications, threads) and sink/hello/hop
// settings come from `base`.
inline SimConfig coverage_config(CoverageVariant variant, const SimConfig& base) {
  SimConfig cfg = base;
  cfg.n = 100;
  cfg.width = 1000.0;
  cfg.height = 1000.0;
  cfg.radio_range = 250.0;
  cfg.placement_file.clear();
  cfg.rw_length = {WalkLength::Kind::Half, 0};
  cfg.view_size.reset();
  cfg.view_timeout.reset();
  cfg.horizon = 1000.0;
  cfg.t_active = 1.0;
  cfg.t_sleep = 9.0;
  cfg.advertise_period.reset();
  switch (variant) {
    case CoverageVariant::Normal:
      cfg.timeout_min = 0.0;
      cfg.timeout_max = 10.0;
      break;
    case CoverageVariant::SmallTimeout:
      cfg.timeout_min = 1.0;
      cfg.timeout_max = 2.0;
      break;
    case CoverageVariant::AllActive:
      cfg.t_active = 10.0;
      cfg.t_sleep = 0.0;
      cfg.timeout_min = 0.0;
      cfg.timeout_max = 0.0;
      break;
    case CoverageVariant::Dense:
      cfg.width = 550.0;
      cfg.height = 550.0;
      cfg.radio_range = kDenseRadioRange;
      cfg.timeout_min = 1.0;
      cfg.timeout_max = 2.0;
      break;
  }
  return cfg;
}

// Mean coverage curve over replications, one row per visit index.
inline FigureDataset exp_coverage(CoverageVariant variant, const SimConfig& base) {
  const SimConfig cfg = coverage_config(variant, base);
  const auto result = replicate(cfg, cfg.replications);
  FigureDataset ds{std::string("coverage_") + to_string(variant), "visit", "mean_coverage",
                   "stddev_coverage",
                   {"mean_collected", "stddev_collected", "predicted_collected", "baseline_coverage"},
                   {}};
  const std::size_t m = cfg.visits();
  for (std::size_t i = 1; i <= m; ++i) {
    const auto suffix = "@" + std::to_string(i);
    const auto& cov = result.at("coverage" + suffix);
    const auto& col = result.at("collected" + suffix);
    ds.rows.push_back({std::to_string(i), cov.mean, cov.stddev, result.runs,
                       {col.mean, col.stddev, predicted_coverage(i, cfg.n),
                        static_cast<double>(i) / static_cast<double>(cfg.n)}});
  }
  return ds;
}

// Generic one-parameter sweep over any config key.
inline FigureDataset run_sweep(const ExperimentSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep: value list is empty");
  {
    SimConfig probe = spec.base;
    apply_setting(probe, spec.param, spec.values.front());
  }
  FigureDataset ds{spec.name, spec.param, "mean_" + spec.metric, "stddev_" + spec.metric, {}, {}};
  for (const auto& value : spec.values) {
    SimConfig cfg = spec.base;
    apply_setting(cfg, spec.param, value);
    const auto result = replicate(cfg, cfg.replications);
    const auto& m = result.at(spec.metric);
    ds.rows.push_back({value, m.mean, m.stddev, result.runs, {}});
  }
  return ds;
}

inline std::string placement_csv(const Topology& topo) {
  std::string out = "id,x,y,degree\n";
  for (NodeId i = 0; i < topo.size(); ++i) {
    out += std::to_string(i) + "," + fmt6(topo.position(i).x) + "," + fmt6(topo.position(i).y) +
           "," + std::to_string(topo.neighbors(i).size()) + "\n";
  }
  return out;
}

// The full figure suite. Every dataset uses `base` for seed, replication
// count and thread count. Returns the files written, in order.
inline std::vector<std::filesystem::path> write_figures(const SimConfig& base,
                                                        const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  const auto emit = [&](const std::string& file, const std::string& text) {
    const auto path = out_dir / file;
    write_text(path, text);
    written.push_back(path);
  };
  const auto grid = default_delta_grid();

  SimConfig active = base;
  active.horizon = 500.0;
  active.t_active = 1.0;
  active.t_sleep = 9.0;
  active.timeout_min = 0.0;
  active.timeout_max.reset();
  active.placement_file.clear();
  // The active count does not depend on walk traffic; skip it here.
  active.dissemination = false;
  emit("fig03_active_vs_delta_n100.csv", to_csv(exp_active_vs_delta(active, 100, grid)));
  emit("fig04_active_vs_delta_n400.csv", to_csv(exp_active_vs_delta(active, 400, grid)));

  const std::vector<std::size_t> sizes_a = {25, 50, 100, 150, 200, 250, 300, 350, 400};
  emit("fig05_delta_for_sqrt_n_25_400.csv", to_csv(exp_delta_for_sqrt_n(active, sizes_a, grid)));
  std::vector<std::size_t> sizes_b;
  for (std::size_t r = 2; r <= 17; ++r) sizes_b.push_back(r * r);
  emit("fig06_delta_for_sqrt_n_4_289.csv", to_csv(exp_delta_for_sqrt_n(active, sizes_b, grid)));

  const auto normal_cfg = coverage_config(CoverageVariant::Normal, base);
  emit("fig07_placement_1000x1000.csv", placement_csv(*make_topology(normal_cfg, base.seed)));
  emit("fig08_coverage_normal.csv", to_csv(exp_coverage(CoverageVariant::Normal, base)));
  emit("fig09_coverage_small_timeout.csv", to_csv(exp_coverage(CoverageVariant::SmallTimeout, base)));
  emit("fig10_coverage_all_active.csv", to_csv(exp_coverage(CoverageVariant::AllActive, base)));
  const auto dense_cfg = coverage_config(CoverageVariant::Dense, base);
  emit("fig11_placement_550x550.csv", placement_csv(*make_topology(dense_cfg, base.seed)));
  emit("fig12_coverage_dense.csv", to_csv(exp_coverage(CoverageVariant::Dense, base)));
  return written;
}

}  // namespace rwsink
