// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "xnoc/packet.hpp"
#include "xnoc/types.hpp"

namespace xnoc {

/// Dynamic energy constants. Electrical values are placeholders, not
/// calibrated figures.
struct EnergyModel {
  double e_router = 1e-12;              // J per flit per router traversal
  double e_link_per_mm = 0.5e-12;       // J per flit per mm of electrical link
  double e_mod_per_bit = 2.59e-15;      // J per bit, modulator
  double laser_efficiency = 0.20;       // wall-plug
  double waveguide_loss_db_per_cm = 1.0;
  double detector_sensitivity = 10e-6;  // W at the receiver
  double link_rate = 50e9;              // bit/s
  std::uint32_t flit_bits = 64;
  double laser_max_output = 0.01;       // W; longer spans are infeasible

  void validate() const;

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

/// Modulation plus laser energy for one flit over `span_mm` of waveguide.
/// The laser must deliver detector_sensitivity after propagation loss.
double optical_flit_energy(double span_mm, const EnergyModel& model);

/// (hops + 1) router traversals plus hops links of `spacing_mm`.
double electrical_flit_energy(int hops, double spacing_mm, const EnergyModel& model);

/// delivery - inject. Throws InvariantError if delivery precedes injection.
Cycle packet_latency(const Packet& packet, Cycle delivery_cycle);

enum class EnergyKind : std::uint8_t { Router, ElectricalLink, OpticalLink };

std::string_view to_string(EnergyKind k);

/// One per-flit energy charge.
struct EnergyEvent {
  Cycle cycle = 0;
  std::uint32_t packet = 0;
  std::uint16_t seq = 0;
  EnergyKind kind = EnergyKind::Router;
  double span_mm = 0.0;  // link length; 0 for router traversals
  double joules = 0.0;
};

struct DeliveryEvent {
  Cycle cycle = 0;
  std::uint32_t packet = 0;
  Cycle latency = 0;
  std::uint32_t flits = 0;
};

enum class IntervalPhase { Window, Reconfig, Drain };

std::string_view to_string(IntervalPhase p);

struct WindowMetrics {
  std::size_t window_index = 0;
  IntervalPhase phase = IntervalPhase::Window;
  Cycle start_cycle = 0;
  Cycle end_cycle = 0;  // exclusive
  std::uint64_t delivered_packets = 0;
  std::uint64_t delivered_flits = 0;
  std::int64_t total_latency_cycles = 0;
  std::int64_t max_latency_cycles = 0;
  double dynamic_energy_joules = 0.0;
  std::uint64_t bus_flit_count = 0;
  std::vector<std::uint32_t> queue_peak;  // per node, packets waiting

  /// total / delivered as a ratio; 0 for an empty interval.
  double mean_latency_cycles() const;
  std::uint32_t queue_peak_max() const;
  /// Lowest node reaching queue_peak_max.
  std::uint32_t queue_peak_node() const;
};

/// Running sums for one interval.
class WindowAccumulator {
 public:
  WindowAccumulator() = default;
  WindowAccumulator(std::size_t window_index, IntervalPhase phase, Cycle start,
                    std::size_t node_count);

  void add_delivery(Cycle latency, std::uint32_t flits);
  void add_energy(double joules) { energy_ += joules; }
  void add_bus_flit() { ++metrics_.bus_flit_count; }
  void note_queue_depth(std::uint32_t node, std::size_t depth);

  const WindowMetrics& current() const { return metrics_; }
  WindowMetrics close(Cycle end);

 private:
  WindowMetrics metrics_;
  long double energy_ = 0;
};

/// Folds delivery and energy events of one interval into its metrics.
WindowMetrics aggregate(std::size_t window_index, IntervalPhase phase, Cycle start, Cycle end,
                        std::span<const DeliveryEvent> deliveries,
                        std::span<const EnergyEvent> energy, std::size_t node_count = 0);

/// Sums a run's interval rows into totals. Per-node peaks take the max.
WindowMetrics sum_metrics(std::span<const WindowMetrics> rows);

/// value / reference, or nullopt when the reference is zero.
std::optional<double> normalized(double value, double reference);

}  // namespace xnoc
