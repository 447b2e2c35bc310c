// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "xnoc/engine.hpp"
#include "xnoc/errors.hpp"
#include "xnoc/report_io.hpp"
#include "xnoc/validation.hpp"

namespace xnoc {
namespace {

SimConfig small_config(Mode mode, Pattern pattern = Pattern::Uniform, Cycle duration = 5000) {
  SimConfig c;
  c.mesh = {4, 4};
  c.mode = mode;
  SyntheticSpec s;
  s.pattern = pattern;
  s.duration = duration;
  s.injection_rate = 0.08;
  s.fcp.hot_pairs = {{NodeId{0}, NodeId{15}}};
  s.fcp.hot_share = 0.8;
  s.mfm.few_count = 2;
  s.mfm.many_to_few_cycles = 300;
  s.mfm.few_to_many_cycles = 300;
  c.traffic = s;
  c.check_invariants = true;
  return c;
}

SimConfig inline_config(Mode mode, std::vector<TraceRecord> records, std::optional<Cycle> duration = {}) {
  SimConfig c;
  c.mesh = {4, 4};
  c.mode = mode;
  c.traffic = InlineTrace{std::move(records), duration};
  return c;
}

struct Capture : EventSink {
  std::vector<std::pair<Packet, Cycle>> deliveries;
  std::vector<EnergyEvent> energy;
  std::vector<ProgressionRecord> reconfigs;
  void on_delivery(Cycle, const Packet& p, Cycle latency) override { deliveries.emplace_back(p, latency); }
  void on_energy(const EnergyEvent& e) override { energy.push_back(e); }
  void on_reconfiguration(const ProgressionRecord& r) override { reconfigs.push_back(r); }
};

std::string outputs(const RunReport& r) {
  std::ostringstream os;
  write_windows_csv(os, r);
  write_progression_csv(os, r.progression);
  write_run_json(os, r);
  return os.str();
}

TEST(Engine, StaticCadence) {
  const RunReport r = run(small_config(Mode::Static));
  ASSERT_EQ(r.progression.size(), 4u);
  const Cycle expected[] = {1000, 2050, 3100, 4150};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(r.progression[k].boundary_cycle, expected[k]);
    EXPECT_EQ(r.progression[k].old_window, 1000);
    EXPECT_EQ(r.progression[k].new_window, 1000);
  }
  ASSERT_GE(r.windows.size(), 9u);
  EXPECT_EQ(r.windows[0].phase, IntervalPhase::Window);
  EXPECT_EQ(r.windows[0].end_cycle, 1000);
  EXPECT_EQ(r.windows[1].phase, IntervalPhase::Reconfig);
  EXPECT_EQ(r.windows[1].start_cycle, 1000);
  EXPECT_EQ(r.windows[1].end_cycle, 1050);
  EXPECT_EQ(r.windows[2].start_cycle, 1050);
  EXPECT_EQ(r.windows[8].start_cycle, 4200);
  EXPECT_EQ(r.windows[8].end_cycle, 5000);  // cut by the traffic horizon
  EXPECT_EQ(r.windows.back().phase, IntervalPhase::Drain);
  for (std::size_t i = 0; i < r.windows.size(); ++i) EXPECT_EQ(r.windows[i].window_index, i);
}

TEST(Engine, BaselineNeverReconfigures) {
  const RunReport r = run(small_config(Mode::Baseline));
  EXPECT_TRUE(r.progression.empty());
  EXPECT_EQ(r.bus_activations, 0u);
  EXPECT_EQ(r.totals.bus_flit_count, 0u);
  for (std::size_t i = 0; i + 1 < r.windows.size(); ++i) {
    EXPECT_EQ(r.windows[i].phase, IntervalPhase::Window);
    EXPECT_EQ(r.windows[i].start_cycle, static_cast<Cycle>(i) * 1000);
  }
}

TEST(Engine, DrainDeliversEverything) {
  for (const Mode m : {Mode::Baseline, Mode::Static, Mode::Adaptive}) {
    for (const Pattern p : {Pattern::Uniform, Pattern::Fcp, Pattern::Mfm}) {
      const RunReport r = run(small_config(m, p));
      EXPECT_FALSE(r.partial);
      EXPECT_GT(r.injected_packets, 0u);
      EXPECT_EQ(r.undelivered_packets, 0u);
      EXPECT_EQ(r.totals.delivered_packets, r.injected_packets);
      EXPECT_GE(r.end_cycle, r.traffic_horizon);
    }
  }
}

TEST(Engine, TotalsEqualTheSumOfIntervals) {
  const RunReport r = run(small_config(Mode::Adaptive, Pattern::Fcp));
  const WindowMetrics s = sum_metrics(r.windows);
  EXPECT_EQ(s.delivered_packets, r.totals.delivered_packets);
  EXPECT_EQ(s.delivered_flits, r.totals.delivered_flits);
  EXPECT_EQ(s.total_latency_cycles, r.totals.total_latency_cycles);
  EXPECT_EQ(s.max_latency_cycles, r.totals.max_latency_cycles);
  EXPECT_EQ(s.bus_flit_count, r.totals.bus_flit_count);
  EXPECT_NEAR(s.dynamic_energy_joules, r.totals.dynamic_energy_joules, r.totals.dynamic_energy_joules * 1e-12);
  EXPECT_EQ(s.queue_peak_max(), r.totals.queue_peak_max());
  EXPECT_EQ(r.windows.front().start_cycle, 0);
  EXPECT_EQ(r.windows.back().end_cycle, r.end_cycle);
  for (std::size_t i = 1; i < r.windows.size(); ++i) {
    EXPECT_EQ(r.windows[i].start_cycle, r.windows[i - 1].end_cycle);
  }
}

TEST(Engine, AdaptiveLogReplays) {
  for (const Pattern p : {Pattern::Uniform, Pattern::Fcp, Pattern::Mfm}) {
    SimConfig c = small_config(Mode::Adaptive, p, 20000);
    c.controller.initial_window = 300;
    const RunReport r = run(c);
    ASSERT_GT(r.progression.size(), 3u);
    const auto replay = validation::controller_replay(r.progression, {true, 0.5, 100, 10, 1.1});
    EXPECT_TRUE(replay.ok) << replay.message;
    EXPECT_TRUE(validation::window_bounds_check(r.progression, 100, 10).ok);
    // Progression latency is the total latency of the matching window row.
    std::size_t k = 0;
    for (const WindowMetrics& w : r.windows) {
      if (w.phase != IntervalPhase::Window || k >= r.progression.size()) continue;
      EXPECT_EQ(r.progression[k].window_latency, static_cast<double>(w.total_latency_cycles));
      EXPECT_EQ(r.progression[k].boundary_cycle, w.end_cycle);
      EXPECT_EQ(r.progression[k].old_window, w.end_cycle - w.start_cycle);
      ++k;
    }
  }
}

TEST(Engine, MeanLatencyCost) {
  SimConfig c = small_config(Mode::Adaptive, Pattern::Uniform, 8000);
  c.controller.latency_cost = LatencyCost::Mean;
  const RunReport r = run(c);
  ASSERT_FALSE(r.progression.empty());
  EXPECT_DOUBLE_EQ(r.progression[0].window_latency, r.windows[0].mean_latency_cycles());
  EXPECT_TRUE(validation::controller_replay(r.progression, {true, 0.5, 100, 10, 1.1}).ok);
}

TEST(Engine, Deterministic) {
  for (const Mode m : {Mode::Baseline, Mode::Adaptive}) {
    const SimConfig c = small_config(m, Pattern::Fcp);
    EXPECT_EQ(outputs(run(c)), outputs(run(c)));
  }
}

TEST(Engine, SingleAndLocalPackets) {
  Capture cap;
  const RunReport r = run(
      inline_config(Mode::Baseline, {{0, NodeId{0}, NodeId{15}, 64}, {3, NodeId{6}, NodeId{6}, 64}}), &cap);
  ASSERT_EQ(cap.deliveries.size(), 2u);
  EXPECT_EQ(cap.deliveries[0].first.id, 1u);
  EXPECT_EQ(cap.deliveries[0].second, 2);  // local hand-off both ways
  EXPECT_EQ(cap.deliveries[1].first.id, 0u);
  EXPECT_EQ(cap.deliveries[1].second,
            validation::zero_load_latency_oracle(NodeId{0}, NodeId{15}, 8, MeshSpec{4, 4}, RouterConfig{}));
  EXPECT_EQ(r.traffic_horizon, 4);
  EXPECT_EQ(r.totals.delivered_packets, 2u);
}

TEST(Engine, MaxCyclesStopsARunEarly) {
  SimConfig c = small_config(Mode::Static);
  c.max_cycles = 1500;
  const RunReport r = run(c);
  EXPECT_TRUE(r.partial);
  EXPECT_EQ(r.end_cycle, 1500);
  EXPECT_GT(r.undelivered_packets, 0u);
  EXPECT_EQ(r.windows.back().end_cycle, 1500);
}

TEST(Engine, NoDrainStopsAtTheHorizon) {
  SimConfig c = small_config(Mode::Baseline);
  c.drain = false;
  const RunReport r = run(c);
  EXPECT_FALSE(r.partial);
  EXPECT_EQ(r.end_cycle, 5000);
  EXPECT_NE(r.windows.back().phase, IntervalPhase::Drain);
}

TEST(Engine, EmptyTraffic) {
  const RunReport r = run(inline_config(Mode::Adaptive, {}));
  EXPECT_EQ(r.end_cycle, 0);
  EXPECT_EQ(r.injected_packets, 0u);
  EXPECT_TRUE(r.progression.empty());
}

TEST(Engine, StrictPauseHoldsInjectionDuringReconfiguration) {
  const std::vector<TraceRecord> recs{{1010, NodeId{0}, NodeId{1}, 8}, {1100, NodeId{0}, NodeId{1}, 8}};
  SimConfig c = inline_config(Mode::Static, recs);
  Capture relaxed;
  run(c, &relaxed);
  c.controller.strict_pause = true;
  Capture strict;
  run(c, &strict);
  ASSERT_EQ(relaxed.deliveries.size(), 2u);
  ASSERT_EQ(strict.deliveries.size(), 2u);
  EXPECT_EQ(relaxed.deliveries[0].second, 7);
  EXPECT_EQ(strict.deliveries[0].second, 1050 - 1010 + 7);
  EXPECT_EQ(strict.deliveries[1].second, 7);
}

TEST(Engine, BusFollowsTheHotPairAndIsDarkDuringReconfiguration) {
  SimConfig c = small_config(Mode::Static, Pattern::Fcp, 20000);
  Capture cap;
  const RunReport r = run(c, &cap);
  EXPECT_GT(r.bus_activations, 0u);
  EXPECT_GT(r.totals.bus_flit_count, 0u);
  std::size_t hot = 0;
  for (const ProgressionRecord& p : r.progression) {
    if (p.bus && ((p.bus->src == NodeId{0} && p.bus->dst == NodeId{15}) ||
                  (p.bus->src == NodeId{15} && p.bus->dst == NodeId{0}))) {
      ++hot;
    }
  }
  EXPECT_GT(hot, r.progression.size() / 2);
  for (const EnergyEvent& e : cap.energy) {
    if (e.kind != EnergyKind::OpticalLink || e.seq != 0) continue;
    for (const WindowMetrics& w : r.windows) {
      if (w.phase == IntervalPhase::Reconfig) {
        ASSERT_FALSE(e.cycle >= w.start_cycle && e.cycle < w.end_cycle) << "head on the bus at " << e.cycle;
      }
    }
  }
}

TEST(Engine, EnergyEventsSumToTheTotal) {
  Capture cap;
  const RunReport r = run(small_config(Mode::Adaptive, Pattern::Fcp), &cap);
  long double sum = 0;
  for (const EnergyEvent& e : cap.energy) sum += e.joules;
  EXPECT_NEAR(static_cast<double>(sum), r.totals.dynamic_energy_joules, r.totals.dynamic_energy_joules * 1e-9);
}

TEST(Engine, EventLogFormat) {
  std::ostringstream os;
  TextEventLog log(os);
  run(inline_config(Mode::Baseline, {{0, NodeId{0}, NodeId{1}, 8}}), &log);
  const std::string expected =
      "F 3 0 east 0 0\n"
      "F 6 1 local 0 0\n"
      "D 7 0 0 1 7\n";
  EXPECT_EQ(os.str(), expected);
}

TEST(Compare, RatiosAgainstTheBaseline) {
  std::vector<SimConfig> cs{small_config(Mode::Baseline, Pattern::Fcp), small_config(Mode::Static, Pattern::Fcp),
                            small_config(Mode::Adaptive, Pattern::Fcp)};
  const Comparison par = compare(cs, true);
  const Comparison ser = compare(cs, false);
  ASSERT_EQ(par.rows.size(), 3u);
  EXPECT_EQ(par.baseline_index, 0u);
  EXPECT_EQ(*par.rows[0].latency_ratio, 1.0);
  EXPECT_EQ(*par.rows[0].energy_ratio, 1.0);
  EXPECT_EQ(par.rows[1].label, "static");
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(outputs(par.reports[i]), outputs(ser.reports[i]));
    EXPECT_DOUBLE_EQ(*par.rows[i].latency_ratio,
                     par.rows[i].mean_latency_cycles / par.rows[0].mean_latency_cycles);
  }
}

TEST(Compare, HarnessMisuse) {
  EXPECT_THROW(compare({}), HarnessError);
  EXPECT_THROW(compare({small_config(Mode::Static)}), HarnessError);
  EXPECT_THROW(compare({small_config(Mode::Baseline), small_config(Mode::Baseline)}), HarnessError);
  SimConfig other = small_config(Mode::Static);
  other.seed = 2;
  EXPECT_THROW(compare({small_config(Mode::Baseline), other}), HarnessError);
  other = small_config(Mode::Static);
  other.mesh.width = 5;
  EXPECT_THROW(compare({small_config(Mode::Baseline), other}), HarnessError);
}

TEST(Compare, UndefinedRatiosWithoutTraffic) {
  const Comparison c = compare({inline_config(Mode::Baseline, {}), inline_config(Mode::Adaptive, {})});
  EXPECT_FALSE(c.rows[1].latency_ratio);
  std::ostringstream os;
  write_comparison_csv(os, c);
  EXPECT_NE(os.str().find("n/a"), std::string::npos);
}

TEST(Outputs, FilesOnDisk) {
  const auto dir = std::filesystem::temp_directory_path() / "xnoc_outputs_test";
  std::filesystem::remove_all(dir);
  const RunReport r = run(small_config(Mode::Adaptive));
  write_run_outputs(dir, r, Normalization{10.0, 1e-6});
  for (const char* f : {"windows.csv", "progression.csv", "run.json"}) EXPECT_TRUE(std::filesystem::exists(dir / f));
  std::ifstream prog(dir / "progression.csv");
  EXPECT_EQ(read_progression_csv(prog), r.progression);
  std::ifstream js(dir / "run.json");
  const std::string text((std::istreambuf_iterator<char>(js)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("\"baseline_mean_latency\": 10.0"), std::string::npos);
  EXPECT_NE(text.find("mt19937_64"), std::string::npos);
  EXPECT_EQ(text.find("wall"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Outputs, FormatDoubleRoundTrips) {
  for (const double v : {0.1, 1.0 / 3.0, 1e-300, 165.76e-15, 123456789.0, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(100.0), "100");
}

}  // namespace
}  // namespace xnoc
