// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "xnoc/config.hpp"
#include "xnoc/errors.hpp"

namespace xnoc {
namespace {

TEST(Config, DefaultsFromAnEmptyObject) {
  const SimConfig c = parse_config("{}");
  EXPECT_EQ(c, SimConfig{});
  EXPECT_EQ(c.mesh.width, 16);
  EXPECT_EQ(c.router.router_delay, 2);
  EXPECT_EQ(c.mode, Mode::Adaptive);
}

TEST(Config, ReadsEverySection) {
  const SimConfig c = parse_config(R"({
    "mesh": {"width": 8, "height": 6, "spacing_mm": 1.5, "clock_ghz": 1.0},
    "router": {"num_vcs": 2, "vc_depth": 4, "router_delay": 3, "link_delay_electrical": 2,
               "link_delay_optical": 3, "local_delay": 1, "credit_delay": 2},
    "mode": "static",
    "controller": {"alpha": 0.25, "window_min": 150, "growth_cap": 4, "initial_window": 500,
                   "bootstrap_factor": 1.2, "reconfig_period": 40, "latency_cost": "mean",
                   "min_hops": 3, "bidirectional": true, "strict_pause": true},
    "energy": {"e_router": 2e-12, "flit_bits": 128, "laser_max_output": 0.02},
    "traffic": {"kind": "synthetic", "pattern": "fcp", "duration": 1000, "injection_rate": 0.1,
                "packet_bytes": 32, "fcp": {"hot_pairs": [[0, 47]], "hot_share": 0.7}},
    "max_cycles": 5000, "drain": false, "seed": 42, "check_invariants": true
  })");
  EXPECT_EQ(c.mesh.height, 6);
  EXPECT_EQ(c.mesh.spacing_mm, 1.5);
  EXPECT_EQ(c.router.credit_delay, 2);
  EXPECT_EQ(c.mode, Mode::Static);
  EXPECT_EQ(c.controller.latency_cost, LatencyCost::Mean);
  EXPECT_TRUE(c.controller.bidirectional);
  EXPECT_EQ(c.controller.growth_cap, 4u);
  EXPECT_EQ(c.energy.flit_bits, 128u);
  const auto& s = std::get<SyntheticSpec>(c.traffic);
  EXPECT_EQ(s.pattern, Pattern::Fcp);
  ASSERT_EQ(s.fcp.hot_pairs.size(), 1u);
  EXPECT_EQ(s.fcp.hot_pairs[0].second, NodeId{47});
  EXPECT_EQ(c.seed, 42u);
  EXPECT_FALSE(c.drain);
}

TEST(Config, JsonRoundTrip) {
  SimConfig c;
  c.mesh = {6, 5, 2.0, 1.0};
  c.mode = Mode::Baseline;
  SyntheticSpec s;
  s.pattern = Pattern::Mfm;
  s.mfm.few_count = 3;
  s.mfm.placement = FewPlacement::Random;
  s.fcp.hot_pairs = {{NodeId{1}, NodeId{2}}};
  c.traffic = s;
  EXPECT_EQ(parse_config(config_to_json(c)), c);

  c.traffic = InlineTrace{{{0, NodeId{0}, NodeId{3}, 64}, {5, NodeId{2}, NodeId{2}, 1}}, 100};
  EXPECT_EQ(parse_config(config_to_json(c, -1)), c);

  c.traffic = TraceFile{"/abs/path.trace", std::nullopt};
  EXPECT_EQ(parse_config(config_to_json(c)), c);
}

TEST(Config, RelativeTracePathsResolveAgainstTheConfigDirectory) {
  const SimConfig c = parse_config(R"({"traffic": {"kind": "trace", "path": "t/x.trace"}})", "/data/run");
  EXPECT_EQ(std::get<TraceFile>(c.traffic).path, "/data/run/t/x.trace");
  const SimConfig a = parse_config(R"({"traffic": {"kind": "trace", "path": "/x.trace"}})", "/data/run");
  EXPECT_EQ(std::get<TraceFile>(a.traffic).path, "/x.trace");
}

TEST(Config, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(parse_config(R"({"mesh": {"pitch": 2}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"colour": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"mesh": {"width": "wide"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"mesh": {"width": 4.5}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed": -1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"mode": "turbo"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"traffic": {"kind": "magic"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"traffic": {"kind": "trace"}})"), ConfigError);
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
}

TEST(Config, SemanticValidation) {
  EXPECT_THROW(parse_config(R"({"controller": {"initial_window": 50}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"controller": {"alpha": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"router": {"num_vcs": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"mesh": {"width": 1}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"traffic": {"kind": "inline", "records": [[0, 0, 999, 8]]}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"traffic": {"kind": "inline", "records": [[5, 0, 1, 8]], "duration": 5}})"),
               ConfigError);
}

TEST(Config, BusMustBeFeasibleAcrossTheMesh) {
  // 32x32 at 1 mm needs a 1023 mm waveguide, far beyond the laser ceiling.
  EXPECT_THROW(parse_config(R"({"mesh": {"width": 32, "height": 32}})"), ConfigError);
  EXPECT_NO_THROW(parse_config(R"({"mesh": {"width": 32, "height": 32}, "mode": "baseline"})"));
}

TEST(Config, MaterializeTraffic) {
  SimConfig c;
  c.mesh = {4, 4};
  SyntheticSpec s;
  s.duration = 300;
  s.seed = 1234;  // replaced by the top-level seed
  c.traffic = s;
  c.seed = 9;
  const MaterializedTraffic t = materialize_traffic(c);
  EXPECT_EQ(t.horizon, 300);
  SyntheticSpec expected = s;
  expected.seed = 9;
  EXPECT_EQ(t.records, generate(expected, c.mesh));

  c.traffic = InlineTrace{{{3, NodeId{0}, NodeId{1}, 8}, {41, NodeId{1}, NodeId{0}, 8}}, std::nullopt};
  EXPECT_EQ(materialize_traffic(c).horizon, 42);
  c.traffic = InlineTrace{{}, std::nullopt};
  EXPECT_EQ(materialize_traffic(c).horizon, 0);
  c.traffic = TraceFile{"/nonexistent/trace", std::nullopt};
  EXPECT_THROW(materialize_traffic(c), ConfigError);
}

TEST(Config, LoadFromFixture) {
  const SimConfig c = load_config(std::string(XNOC_FIXTURES) + "/small.json");
  EXPECT_EQ(c.mesh.width, 4);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_THROW(load_config(std::string(XNOC_FIXTURES) + "/bad_config.json"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent.json"), ConfigError);
}

}  // namespace
}  // namespace xnoc
