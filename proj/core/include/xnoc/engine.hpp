// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xnoc/config.hpp"
#include "xnoc/metrics.hpp"
#include "xnoc/packet.hpp"
#include "xnoc/reconfig.hpp"

namespace xnoc {

/// Optional observer of a run. Default implementations ignore everything.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void on_flit_departure(Cycle, NodeId /*router*/, Port /*out*/, const Flit&) {}
  virtual void on_delivery(Cycle, const Packet&, Cycle /*latency*/) {}
  virtual void on_energy(const EnergyEvent&) {}
  virtual void on_reconfiguration(const ProgressionRecord&) {}
};

/// Writes flit departures and packet deliveries as text, one per line:
///   F <cycle> <router> <port> <packet> <seq>
///   D <cycle> <packet> <src> <dst> <latency>
class TextEventLog : public EventSink {
 public:
  explicit TextEventLog(std::ostream& os) : os_(os) {}
  void on_flit_departure(Cycle now, NodeId router, Port out, const Flit& flit) override;
  void on_delivery(Cycle now, const Packet& packet, Cycle latency) override;

 private:
  std::ostream& os_;
};

struct RunReport {
  SimConfig config;
  std::vector<WindowMetrics> windows;  // window, reconfig, and drain intervals in order
  std::vector<ProgressionRecord> progression;
  WindowMetrics totals;
  std::uint64_t injected_packets = 0;
  std::uint64_t undelivered_packets = 0;
  std::uint64_t bus_activations = 0;
  Cycle traffic_horizon = 0;
  Cycle end_cycle = 0;
  bool partial = false;  // stopped by max_cycles
  double wall_seconds = 0.0;
};

/// Runs one simulation. Deterministic except for wall_seconds.
RunReport run(const SimConfig& config, EventSink* sink = nullptr);

struct ComparisonRow {
  std::string label;
  Mode mode = Mode::Baseline;
  std::uint64_t delivered_packets = 0;
  double mean_latency_cycles = 0.0;
  double dynamic_energy_joules = 0.0;
  std::optional<double> latency_ratio;  // vs baseline; nullopt when undefined
  std::optional<double> energy_ratio;
};

struct Comparison {
  std::vector<RunReport> reports;
  std::vector<ComparisonRow> rows;
  std::size_t baseline_index = 0;
};

/// Runs configs that share mesh and traffic and normalizes against the single
/// baseline among them. Throws HarnessError otherwise. Independent runs may
/// execute concurrently; results do not depend on it.
Comparison compare(const std::vector<SimConfig>& configs, bool parallel = true);

}  // namespace xnoc
