#pragma once

// Trace export: per-sample CSV, sink visit CSV, and a JSON run summary.
// CSV files use a header row, LF endings and %.6g floats.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "rwsink/config.hpp"
#include "rwsink/engine.hpp"

namespace rwsink {

inline std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string trace_csv(const RunTrace& trace) {
  std::string out = "time_s,active_nodes,mean_view_size,max_view_size\n";
  for (std::size_t s = 0; s < trace.active_samples.size(); ++s) {
    const auto& sizes = trace.view_sizes[s];
    double total = 0.0;
    std::uint32_t peak = 0;
    for (auto v : sizes) {
      total += v;
      peak = std::max(peak, v);
    }
    const double mean = sizes.empty() ? 0.0 : total / static_cast<double>(sizes.size());
    out += std::to_string(s) + "," + std::to_string(trace.active_samples[s]) + "," + fmt6(mean) +
           "," + std::to_string(peak) + "\n";
  }
  return out;
}

inline std::string sink_csv(const SinkReport& report) {
  std::string out =
      "visit_index,node_id,time_s,entries_collected,new_origins,cumulative_origins,coverage\n";
  const auto n = static_cast<double>(report.network_size());
  for (std::size_t i = 0; i < report.visits().size(); ++i) {
    const auto& v = report.visits()[i];
    out += std::to_string(i + 1) + "," + std::to_string(v.node) + "," + fmt6(v.time) + "," +
           std::to_string(v.entries_collected) + "," + std::to_string(v.new_origins) + "," +
           std::to_string(v.cumulative_origins) + "," +
           fmt6(static_cast<double>(v.cumulative_origins) / n) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json config_json(const SimConfig& cfg) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config_entries(cfg)) j[k] = v;
  return j;
}

inline std::string summary_json(const SimConfig& cfg, const RunTrace& trace) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  j["seed"] = trace.seed;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [k, v] : run_metrics(trace)) metrics[k] = v;
  j["metrics"] = metrics;
  return j.dump(2) + "\n";
}

inline std::string summary_json(const SimConfig& cfg, const ReplicationResult& result) {
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  j["seed"] = result.base_seed;
  j["runs"] = result.runs;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.metrics) metrics[k] = {{"mean", v.mean}, {"stddev", v.stddev}};
  j["metrics"] = metrics;
  return j.dump(2) + "\n";
}

// Column statistics for a CSV with a header row. Columns holding any
// non-numeric cell are skipped.
struct ColumnSummary {
  std::string column;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

inline std::vector<ColumnSummary> summarize_csv(std::string_view text) {
  const auto split = [](std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
  }
  if (lines.empty()) throw ParseError(1, "empty CSV");
  const auto header = split(lines.front());
  std::vector<std::vector<double>> values(header.size());
  std::vector<bool> numeric(header.size(), true);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r]);
    if (cells.size() != header.size()) throw ParseError(r + 1, "column count differs from header");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
      if (ec != std::errc{} || ptr != cells[c].data() + cells[c].size()) {
        numeric[c] = false;
      } else {
        values[c].push_back(v);
      }
    }
  }
  std::vector<ColumnSummary> out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!numeric[c] || values[c].empty()) continue;
    const auto s = summarize(values[c]);
    const auto [lo, hi] = std::minmax_element(values[c].begin(), values[c].end());
    out.push_back({std::string(header[c]), values[c].size(), s.mean, s.stddev, *lo, *hi});
  }
  return out;
}

}  // namespace rwsink
