#pragma once

// Static deployment: node positions on a width x height field and the
// unit-disk adjacency graph induced by a common radio range.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwsink/error.hpp"
#include "rwsink/rng.hpp"

namespace rwsink {

using NodeId = std::uint32_t;

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

class Topology {
 public:
  Topology() = default;
  Topology(double width, double height, double radio_range, std::vector<Position> positions,
           std::vector<std::vector<NodeId>> adjacency)
      : width_(width),
        height_(height),
        radio_range_(radio_range),
        positions_(std::move(positions)),
        adjacency_(std::move(adjacency)) {}

  std::size_t size() const noexcept { return positions_.size(); }
  double width() const noexcept { return width_; }
  double height() const noexcept { return height_; }
  double radio_range() const noexcept { return radio_range_; }

  const std::vector<Position>& positions() const noexcept { return positions_; }
  const Position& position(NodeId id) const { return positions_.at(id); }

  // Sorted ascending by NodeId.
  std::span<const NodeId> neighbors(NodeId id) const { return adjacency_.at(id); }

  bool adjacent(NodeId a, NodeId b) const {
    const auto& nbrs = adjacency_.at(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

 private:
  double width_ = 0.0;
  double height_ = 0.0;
  double radio_range_ = 0.0;
  std::vector<Position> positions_;
  std::vector<std::vector<NodeId>> adjacency_;
};

// Independent uniform coordinates; x draws and y draws alternate per node.
inline std::vector<Position> place_uniform(std::size_t n, double width, double height,
                                           RngStream& rng) {
  if (n == 0) throw ConfigError("place_uniform: node count must be >= 1");
  if (!(width > 0.0) || !(height > 0.0)) {
    throw ConfigError("place_uniform: field dimensions must be positive");
  }
  std::vector<Position> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform01() * width;
    const double y = rng.uniform01() * height;
    out.push_back({x, y});
  }
  return out;
}

// Closed disk: nodes at distance exactly radio_range are adjacent.
inline Topology build_adjacency(std::vector<Position> positions, double radio_range,
                                double width = 0.0, double height = 0.0) {
  if (!(radio_range > 0.0)) throw ConfigError("build_adjacency: radio range must be positive");
  const std::size_t n = positions.size();
  if (width <= 0.0 || height <= 0.0) {
    for (const auto& p : positions) {
      width = std::max(width, p.x);
      height = std::max(height, p.y);
    }
  }
  const double r2 = radio_range * radio_range;
  std::vector<std::vector<NodeId>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = positions[i].x - positions[j].x;
      const double dy = positions[i].y - positions[j].y;
      if (dx * dx + dy * dy <= r2) {
        adjacency[i].push_back(static_cast<NodeId>(j));
        adjacency[j].push_back(static_cast<NodeId>(i));
      }
    }
  }
  // i ascending and j ascending fill each list in sorted order already.
  return Topology(width, height, radio_range, std::move(positions), std::move(adjacency));
}

struct DegreeStats {
  std::size_t min = 0;
  double mean = 0.0;
  std::size_t max = 0;
  bool connected = false;
};

inline DegreeStats degree_stats(const Topology& topo) {
  DegreeStats stats;
  const std::size_t n = topo.size();
  if (n == 0) return stats;
  stats.min = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t d = topo.neighbors(i).size();
    stats.min = std::min(stats.min, d);
    stats.max = std::max(stats.max, d);
    total += d;
  }
  stats.mean = static_cast<double>(total) / static_cast<double>(n);

  std::vector<bool> seen(n, false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : topo.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  stats.connected = reached == n;
  return stats;
}

// Placement file: one "id x y" record per line. Blank lines and lines
// starting with '#' are ignored. Ids must cover 0..n-1 exactly once.
inline std::vector<Position> load_placement(std::string_view text) {
  struct Record {
    NodeId id;
    Position pos;
    std::size_t line;
  };
  std::vector<Record> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      fields.push_back(line.substr(start, pos - start));
    }
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 3) throw ParseError(line_no, "expected \"id x y\"");

    Record rec{0, {}, line_no};
    const auto parse_field = [&](std::string_view f, auto& value) {
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ParseError(line_no, "malformed field '" + std::string(f) + "'");
      }
    };
    parse_field(fields[0], rec.id);
    parse_field(fields[1], rec.pos.x);
    parse_field(fields[2], rec.pos.y);
    if (!std::isfinite(rec.pos.x) || !std::isfinite(rec.pos.y)) {
      throw ParseError(line_no, "non-finite coordinate");
    }
    records.push_back(rec);
  }

  std::vector<Position> out(records.size());
  std::vector<std::size_t> defined_at(records.size(), 0);
  for (const auto& rec : records) {
    if (rec.id >= records.size()) {
      throw ParseError(rec.line, "id " + std::to_string(rec.id) + " leaves a gap (have " +
                                     std::to_string(records.size()) + " records)");
    }
    if (defined_at[rec.id] != 0) {
      throw ParseError(rec.line, "duplicate id " + std::to_string(rec.id) + " (first on line " +
                                     std::to_string(defined_at[rec.id]) + ")");
    }
    defined_at[rec.id] = rec.line;
    out[rec.id] = rec.pos;
  }
  return out;
}

// Inverse of load_placement; %.17g round-trips doubles exactly.
inline std::string save_placement(std::span<const Position> positions) {
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int len =
        std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", i, positions[i].x, positions[i].y);
    out.append(buf, static_cast<std::size_t>(len));
  }
  return out;
}

}  // namespace rwsink
