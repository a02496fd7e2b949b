#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the code paths being checked: placements are drawn with
// std::mt19937_64, views with std::sample, and statistics are closed-form
// or come from Boost.Math.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

inline double chi_square_statistic(const std::vector<std::size_t>& counts, double expected_each) {
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected_each;
    stat += d * d / expected_each;
  }
  return stat;
}

inline double chi_square_critical(std::size_t dof, double alpha) {
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

// Kolmogorov-Smirnov D statistic against Uniform(lo, hi).
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = (xs[i] - lo) / (hi - lo);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

// Asymptotic KS critical value at alpha = 0.01.
inline double ks_critical_001(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

// Views drawn uniformly without replacement from all n node ids.
inline std::vector<std::vector<std::uint32_t>> ideal_uniform_views(std::size_t n, std::size_t k,
                                                                   std::mt19937_64& gen) {
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0u);
  std::vector<std::vector<std::uint32_t>> views(n);
  for (auto& v : views) {
    std::sample(ids.begin(), ids.end(), std::back_inserter(v), k, gen);
  }
  return views;
}

inline std::size_t intersection_size(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::size_t count = 0;
  for (auto x : a) count += static_cast<std::size_t>(std::count(b.begin(), b.end(), x));
  return count;
}

// Mean node degree of n uniform points on w x h with closed-disk range r,
// averaged over `trials` placements.
inline double mean_degree(std::size_t n, double w, double h, double r, std::size_t trials,
                          std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ux(0.0, w), uy(0.0, h);
  double total = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = ux(gen);
      ys[i] = uy(gen);
    }
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::hypot(xs[i] - xs[j], ys[i] - ys[j]) <= r) ++edges;
      }
    }
    total += 2.0 * static_cast<double>(edges) / static_cast<double>(n);
  }
  return total / static_cast<double>(trials);
}

}  // namespace oracle
