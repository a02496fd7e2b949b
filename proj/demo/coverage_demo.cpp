// Single all-active run: print what the sink learns visit by visit next to
// the i * (sqrt(n) - 1) estimate.

#include <cstdio>

#include "rwsink/rwsink.hpp"

int main() {
  rwsink::SimConfig base;
  base.seed = 7;
  const auto cfg = rwsink::coverage_config(rwsink::CoverageVariant::AllActive, base);

  rwsink::Simulation sim(cfg, cfg.seed);
  const auto trace = sim.run();
  const auto stats = trace.degrees;
  std::printf("n=%zu mean degree %.1f connected=%s walks=%llu\n", cfg.n, stats.mean,
              stats.connected ? "yes" : "no", static_cast<unsigned long long>(trace.counts.launches));
  std::printf("%6s %6s %10s %10s\n", "visit", "node", "known", "predicted");
  for (const auto& [i, known] : rwsink::coverage_curve(trace.sink)) {
    std::printf("%6zu %6u %10zu %10.0f\n", i, trace.sink.visits()[i - 1].node, known,
                rwsink::predicted_coverage(i, cfg.n));
  }
}
