// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "xnoc/errors.hpp"
#include "xnoc/metrics.hpp"

namespace xnoc {
namespace {

TEST(Energy, ModulationTermFor64BitFlits) {
  EnergyModel m;
  m.detector_sensitivity = 0.0;  // isolates the modulator
  EXPECT_NEAR(optical_flit_energy(5.0, m), 165.76e-15, 1e-27);
}

TEST(Energy, LaserTermFollowsWaveguideLoss) {
  const EnergyModel m;
  // 10 mm at 1 dB/cm is 1 dB: the laser must emit 10^0.1 times the detector floor.
  const double laser_w = 10e-6 * std::pow(10.0, 0.1) / 0.2;
  const double expected = 2.59e-15 * 64 + laser_w * 64 / 50e9;
  EXPECT_NEAR(optical_flit_energy(10.0, m), expected, expected * 1e-12);
  EXPECT_LT(optical_flit_energy(1.0, m), optical_flit_energy(10.0, m));
}

TEST(Energy, LongSpansBecomeInfeasible) {
  const EnergyModel m;  // 10 mW ceiling over a 10 uW floor allows 30 dB, i.e. 300 mm
  EXPECT_NO_THROW(optical_flit_energy(290.0, m));
  EXPECT_THROW(optical_flit_energy(310.0, m), InfeasibleSpanError);
  EXPECT_THROW(optical_flit_energy(0.0, m), DegenerateSpanError);
  EXPECT_THROW(optical_flit_energy(-1.0, m), DegenerateSpanError);
}

TEST(Energy, ElectricalPerHop) {
  const EnergyModel m;
  EXPECT_DOUBLE_EQ(electrical_flit_energy(1, 1.0, m), 2.5e-12);
  EXPECT_DOUBLE_EQ(electrical_flit_energy(30, 1.0, m), 31e-12 + 15e-12);
  EXPECT_DOUBLE_EQ(electrical_flit_energy(2, 2.0, m), 3e-12 + 2e-12);
  EXPECT_THROW(electrical_flit_energy(0, 1.0, m), InvariantError);
}

TEST(Energy, ModelValidation) {
  EnergyModel m;
  EXPECT_NO_THROW(m.validate());
  m.laser_efficiency = 0.0;
  EXPECT_THROW(m.validate(), ConfigError);
  m = {};
  m.flit_bits = 0;
  EXPECT_THROW(m.validate(), ConfigError);
  m = {};
  m.e_router = -1.0;
  EXPECT_THROW(m.validate(), ConfigError);
  m = {};
  m.link_rate = 0.0;
  EXPECT_THROW(m.validate(), ConfigError);
}

TEST(Latency, DeliveryMinusInjection) {
  const Packet p{4, NodeId{0}, NodeId{1}, 1, 100};
  EXPECT_EQ(packet_latency(p, 107), 7);
  EXPECT_THROW(packet_latency(p, 99), InvariantError);
}

TEST(Windows, AggregateAndSum) {
  const std::vector<DeliveryEvent> d{{10, 0, 7, 1}, {12, 1, 20, 8}, {15, 2, 9, 8}};
  const std::vector<EnergyEvent> e{{1, 0, 0, EnergyKind::Router, 0.0, 1e-12},
                                   {2, 0, 0, EnergyKind::OpticalLink, 10.0, 3e-13},
                                   {3, 1, 0, EnergyKind::ElectricalLink, 1.0, 5e-13}};
  const WindowMetrics w = aggregate(3, IntervalPhase::Window, 0, 20, d, e, 4);
  EXPECT_EQ(w.window_index, 3u);
  EXPECT_EQ(w.delivered_packets, 3u);
  EXPECT_EQ(w.delivered_flits, 17u);
  EXPECT_EQ(w.total_latency_cycles, 36);
  EXPECT_EQ(w.max_latency_cycles, 20);
  EXPECT_DOUBLE_EQ(w.mean_latency_cycles(), 12.0);
  EXPECT_DOUBLE_EQ(w.dynamic_energy_joules, 1.8e-12);
  EXPECT_EQ(w.bus_flit_count, 1u);

  const WindowMetrics empty = aggregate(4, IntervalPhase::Reconfig, 20, 70, {}, {}, 4);
  EXPECT_EQ(empty.mean_latency_cycles(), 0.0);

  const std::vector<WindowMetrics> rows{w, empty};
  const WindowMetrics total = sum_metrics(rows);
  EXPECT_EQ(total.start_cycle, 0);
  EXPECT_EQ(total.end_cycle, 70);
  EXPECT_EQ(total.delivered_packets, 3u);
  EXPECT_DOUBLE_EQ(total.dynamic_energy_joules, 1.8e-12);
}

TEST(Windows, QueuePeakTracksTheDeepestNode) {
  WindowAccumulator acc(0, IntervalPhase::Window, 0, 4);
  acc.note_queue_depth(2, 5);
  acc.note_queue_depth(1, 3);
  acc.note_queue_depth(2, 1);
  acc.note_queue_depth(9, 100);  // off-mesh, ignored
  const WindowMetrics w = acc.close(10);
  EXPECT_EQ(w.queue_peak_max(), 5u);
  EXPECT_EQ(w.queue_peak_node(), 2u);
}

TEST(Normalize, UndefinedAgainstZero) {
  EXPECT_FALSE(normalized(3.0, 0.0));
  EXPECT_DOUBLE_EQ(*normalized(3.0, 4.0), 0.75);
}

}  // namespace
}  // namespace xnoc
