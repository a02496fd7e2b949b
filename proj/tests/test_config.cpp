#include <gtest/gtest.h>

#include "rwsink/config.hpp"

using namespace rwsink;

TEST(Config, Defaults) {
  const SimConfig cfg;
  EXPECT_EQ(cfg.walk_hops(), 50u);
  EXPECT_EQ(cfg.visits(), 10u);
  EXPECT_DOUBLE_EQ(cfg.visit_gap(), 10.0);
  EXPECT_DOUBLE_EQ(cfg.visit_start(), 400.0);
  EXPECT_DOUBLE_EQ(cfg.advertise(), 10.0);
  EXPECT_TRUE(std::holds_alternative<SizeBased>(cfg.view_policy()));
  EXPECT_EQ(std::get<SizeBased>(cfg.view_policy()).k, 10u);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, SqrtCeil) {
  EXPECT_EQ(SimConfig::sqrt_ceil(1), 1u);
  EXPECT_EQ(SimConfig::sqrt_ceil(4), 2u);
  EXPECT_EQ(SimConfig::sqrt_ceil(5), 3u);
  EXPECT_EQ(SimConfig::sqrt_ceil(100), 10u);
  EXPECT_EQ(SimConfig::sqrt_ceil(101), 11u);
}

TEST(Config, ParseFile) {
  const auto cfg = parse_config(
      "# comment\n"
      "n = 400\n"
      "delta = 0.8   # trailing\n"
      "rw_length = n\n"
      "view_policy = timeout:30\n"
      "sink_visits = auto\n"
      "fixed_topology = true\n");
  EXPECT_EQ(cfg.n, 400u);
  EXPECT_NEAR(cfg.t_sleep, 8.0, 1e-12);
  EXPECT_NEAR(cfg.t_active, 2.0, 1e-12);
  EXPECT_EQ(cfg.walk_hops(), 400u);
  EXPECT_DOUBLE_EQ(std::get<TimeoutBased>(cfg.view_policy()).tau, 30.0);
  EXPECT_EQ(cfg.visits(), 20u);
  EXPECT_TRUE(cfg.fixed_topology);
}

TEST(Config, ParseErrorsCarryLine) {
  try {
    parse_config("n = 10\n\nhorizon = 5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_config("n 10\n"), ParseError);
  EXPECT_THROW(parse_config("n = ten\n"), ParseError);
  EXPECT_THROW(parse_config("fixed_topology = maybe\n"), ParseError);
}

TEST(Config, ApplySettingErrors) {
  SimConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "bogus", "1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "view_policy", "size:0"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "view_policy", "timeout:-1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "view_policy", "lru:4"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "delta", "1.0"), ConfigError);
}

TEST(Config, ValidateRejects) {
  SimConfig cfg;
  cfg.n = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.radio_range = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.t_active = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.timeout_min = 5;
  cfg.timeout_max = 2;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.sink_visits = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.horizon = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Config, FormatRoundTrips) {
  auto cfg = parse_config("n = 77\nt_active_s = 2.5\nview_policy = size:7\nrw_length = 13\nsink_gap_s = 3\n");
  const auto again = parse_config(format_config(cfg));
  EXPECT_EQ(format_config(again), format_config(cfg));
  EXPECT_EQ(again.walk_hops(), 13u);
  EXPECT_EQ(std::get<SizeBased>(again.view_policy()).k, 7u);
}

TEST(Config, EveryKeyIsAccepted) {
  for (const auto& [key, value] : config_entries(SimConfig{})) {
    SimConfig cfg;
    EXPECT_NO_THROW(apply_setting(cfg, key, value)) << key << "=" << value;
  }
}
