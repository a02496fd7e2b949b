#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rwsink/topology.hpp"

using namespace rwsink;

namespace {

std::vector<Position> place(std::size_t n, double w, double h, std::uint64_t seed) {
  auto rng = rng_stream(seed, stream::kPlacement);
  return place_uniform(n, w, h, rng);
}

}  // namespace

TEST(Placement, InsideField) {
  const auto pts = place(100, 1000, 1000, 1);
  ASSERT_EQ(pts.size(), 100u);
  for (const auto& p : pts) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.x, 1000.0);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, 1000.0);
  }
}

TEST(Placement, SingleNodeHasNoNeighbours) {
  const auto topo = build_adjacency(place(1, 1000, 1000, 1), 250);
  EXPECT_EQ(topo.size(), 1u);
  EXPECT_TRUE(topo.neighbors(0).empty());
}

TEST(Placement, RejectsEmptyNetwork) {
  auto rng = rng_stream(1, stream::kPlacement);
  EXPECT_THROW(place_uniform(0, 1000, 1000, rng), ConfigError);
}

TEST(Placement, MeanCoordinateNearCentre) {
  const auto pts = place(10000, 1000, 1000, 5);
  double sx = 0, sy = 0;
  for (const auto& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  // sd of the mean of U(0,1000) over 1e4 samples: 1000/sqrt(12)/100
  const double sigma = 1000.0 / std::sqrt(12.0) / 100.0;
  EXPECT_NEAR(sx / 1e4, 500.0, 3 * sigma);
  EXPECT_NEAR(sy / 1e4, 500.0, 3 * sigma);
}

TEST(Placement, MarginalsPassKolmogorovSmirnov) {
  for (std::size_t n : {1000u, 10000u}) {
    const auto pts = place(n, 1000, 550, 17);
    std::vector<double> xs, ys;
    for (const auto& p : pts) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
    EXPECT_LT(oracle::ks_uniform(xs, 0, 1000), oracle::ks_critical_001(n)) << n;
    EXPECT_LT(oracle::ks_uniform(ys, 0, 550), oracle::ks_critical_001(n)) << n;
  }
}

TEST(Placement, SameSeedSamePositions) {
  EXPECT_EQ(save_placement(place(200, 1000, 1000, 9)), save_placement(place(200, 1000, 1000, 9)));
  EXPECT_NE(save_placement(place(200, 1000, 1000, 9)), save_placement(place(200, 1000, 1000, 10)));
}

TEST(Adjacency, RangeBoundaryIsClosed) {
  const double r = 250.0;
  const double eps = 1e-9;
  auto at = [](double d) { return std::vector<Position>{{0, 0}, {d, 0}}; };
  EXPECT_TRUE(build_adjacency(at(r), r).adjacent(0, 1));
  EXPECT_TRUE(build_adjacency(at(r - eps), r).adjacent(0, 1));
  EXPECT_FALSE(build_adjacency(at(r + 1e-6), r).adjacent(0, 1));
  EXPECT_FALSE(build_adjacency(at(r), r).adjacent(0, 0));
}

TEST(Adjacency, SymmetricSortedAndMatchesDistance) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto topo = build_adjacency(place(150, 1000, 1000, seed), 250);
    for (NodeId i = 0; i < topo.size(); ++i) {
      const auto nb = topo.neighbors(i);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      for (NodeId j = 0; j < topo.size(); ++j) {
        const auto& a = topo.position(i);
        const auto& b = topo.position(j);
        const bool expect = i != j && std::hypot(a.x - b.x, a.y - b.y) <= 250.0;
        ASSERT_EQ(topo.adjacent(i, j), expect);
        ASSERT_EQ(topo.adjacent(i, j), topo.adjacent(j, i));
      }
    }
  }
}

TEST(Adjacency, RejectsBadRange) {
  EXPECT_THROW(build_adjacency(place(3, 10, 10, 1), 0.0), ConfigError);
  EXPECT_THROW(build_adjacency(place(3, 10, 10, 1), -1.0), ConfigError);
}

TEST(DegreeStats, CompleteGraph) {
  std::vector<Position> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({double(i), 0.0});
  const auto s = degree_stats(build_adjacency(pts, 100));
  EXPECT_EQ(s.min, 4u);
  EXPECT_EQ(s.max, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_TRUE(s.connected);
}

TEST(DegreeStats, IsolatedPair) {
  const auto s = degree_stats(build_adjacency({{0, 0}, {500, 500}}, 250));
  EXPECT_EQ(s.min, 0u);
  EXPECT_EQ(s.max, 0u);
  EXPECT_DOUBLE_EQ(s.mean, 0.0);
  EXPECT_FALSE(s.connected);
}

TEST(DegreeStats, ReferenceScenarioUsuallyConnected) {
  // n=100 on 1000x1000 at range 250: mean degree near 15 and connected in
  // the large majority of draws.
  int connected = 0;
  double mean = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = degree_stats(build_adjacency(place(100, 1000, 1000, seed), 250));
    connected += s.connected;
    mean += s.mean / 20.0;
  }
  EXPECT_GE(connected, 16);
  EXPECT_NEAR(mean, oracle::mean_degree(100, 1000, 1000, 250, 200, 99), 1.0);
}

TEST(DegreeStats, DenseVariantRange) {
  // The dense placement targets a mean degree of about 44.
  const double oracle_mean = oracle::mean_degree(100, 550, 550, 260, 400, 2024);
  EXPECT_GE(oracle_mean, 40.0);
  EXPECT_LE(oracle_mean, 48.0);
  double mean = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    mean += degree_stats(build_adjacency(place(100, 550, 550, seed), 260)).mean / 50.0;
  }
  EXPECT_NEAR(mean, oracle_mean, 1.5);
}

TEST(PlacementFile, RoundTrip) {
  const auto pts = place(50, 1000, 1000, 3);
  const auto back = load_placement(save_placement(pts));
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(back[i].x, pts[i].x);
    EXPECT_EQ(back[i].y, pts[i].y);
  }
}

TEST(PlacementFile, CommentsBlanksAndOrder) {
  const auto pts = load_placement("# header\n\n1 5 6\n0 1.5 2.5\n");
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[0].x, 1.5);
  EXPECT_DOUBLE_EQ(pts[1].y, 6.0);
}

TEST(PlacementFile, Errors) {
  EXPECT_THROW(load_placement("0 1 2\n0 3 4\n"), ParseError);
  EXPECT_THROW(load_placement("0 1 2\n2 3 4\n"), ParseError);
  EXPECT_THROW(load_placement("0 1\n"), ParseError);
  EXPECT_THROW(load_placement("0 x 2\n"), ParseError);
  try {
    load_placement("0 1 2\n1 a b\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}
