// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xnoc/errors.hpp"

namespace xnoc {

void EnergyModel::validate() const {
  const auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(e_router) || !nonneg(e_link_per_mm) || !nonneg(e_mod_per_bit)) {
    throw ConfigError("energy constants must be finite and >= 0");
  }
  if (!(laser_efficiency > 0.0 && laser_efficiency <= 1.0)) {
    throw ConfigError("energy.laser_efficiency must be in (0, 1]");
  }
  if (!nonneg(waveguide_loss_db_per_cm)) throw ConfigError("energy.waveguide_loss_db_per_cm must be >= 0");
  if (!nonneg(detector_sensitivity)) throw ConfigError("energy.detector_sensitivity must be >= 0");
  if (!(link_rate > 0.0) || !std::isfinite(link_rate)) throw ConfigError("energy.link_rate must be > 0");
  if (flit_bits == 0 || flit_bits > 4096) throw ConfigError("energy.flit_bits must be in [1, 4096]");
  if (!(laser_max_output > 0.0)) throw ConfigError("energy.laser_max_output must be > 0");
}

double optical_flit_energy(double span_mm, const EnergyModel& model) {
  if (!(span_mm > 0.0)) throw DegenerateSpanError("optical span must be positive");
  const double loss_db = model.waveguide_loss_db_per_cm * span_mm / 10.0;
  const double laser_out = model.detector_sensitivity * std::pow(10.0, loss_db / 10.0);
  if (laser_out > model.laser_max_output) {
    throw InfeasibleSpanError("span of " + std::to_string(span_mm) + " mm needs " + std::to_string(laser_out) +
                              " W of laser output, above the " + std::to_string(model.laser_max_output) +
                              " W ceiling");
  }
  const double bits = static_cast<double>(model.flit_bits);
  const double wall_power = laser_out / model.laser_efficiency;
  return model.e_mod_per_bit * bits + wall_power * bits / model.link_rate;
}

double electrical_flit_energy(int hops, double spacing_mm, const EnergyModel& model) {
  if (hops < 1) throw InvariantError("electrical path needs at least one hop");
  return (hops + 1) * model.e_router + hops * spacing_mm * model.e_link_per_mm;
}

Cycle packet_latency(const Packet& packet, Cycle delivery_cycle) {
  if (delivery_cycle < packet.inject_cycle) {
    throw InvariantError("packet " + std::to_string(packet.id) + " delivered before injection");
  }
  return delivery_cycle - packet.inject_cycle;
}

std::string_view to_string(EnergyKind k) {
  switch (k) {
    case EnergyKind::Router: return "router";
    case EnergyKind::ElectricalLink: return "electrical_link";
    case EnergyKind::OpticalLink: return "optical_link";
  }
  return "?";
}

std::string_view to_string(IntervalPhase p) {
  switch (p) {
    case IntervalPhase::Window: return "window";
    case IntervalPhase::Reconfig: return "reconfig";
    case IntervalPhase::Drain: return "drain";
  }
  return "?";
}

double WindowMetrics::mean_latency_cycles() const {
  if (delivered_packets == 0) return 0.0;
  return static_cast<double>(total_latency_cycles) / static_cast<double>(delivered_packets);
}

std::uint32_t WindowMetrics::queue_peak_max() const {
  return queue_peak.empty() ? 0 : *std::max_element(queue_peak.begin(), queue_peak.end());
}

std::uint32_t WindowMetrics::queue_peak_node() const {
  if (queue_peak.empty()) return 0;
  return static_cast<std::uint32_t>(std::max_element(queue_peak.begin(), queue_peak.end()) - queue_peak.begin());
}

WindowAccumulator::WindowAccumulator(std::size_t window_index, IntervalPhase phase, Cycle start,
                                     std::size_t node_count) {
  metrics_.window_index = window_index;
  metrics_.phase = phase;
  metrics_.start_cycle = start;
  metrics_.end_cycle = start;
  metrics_.queue_peak.assign(node_count, 0);
}

void WindowAccumulator::add_delivery(Cycle latency, std::uint32_t flits) {
  ++metrics_.delivered_packets;
  metrics_.delivered_flits += flits;
  metrics_.total_latency_cycles += latency;
  metrics_.max_latency_cycles = std::max(metrics_.max_latency_cycles, latency);
}

void WindowAccumulator::note_queue_depth(std::uint32_t node, std::size_t depth) {
  if (node >= metrics_.queue_peak.size()) return;
  auto& peak = metrics_.queue_peak[node];
  peak = std::max(peak, static_cast<std::uint32_t>(depth));
}

WindowMetrics WindowAccumulator::close(Cycle end) {
  metrics_.end_cycle = end;
  metrics_.dynamic_energy_joules = static_cast<double>(energy_);
  return metrics_;
}

WindowMetrics aggregate(std::size_t window_index, IntervalPhase phase, Cycle start, Cycle end,
                        std::span<const DeliveryEvent> deliveries, std::span<const EnergyEvent> energy,
                        std::size_t node_count) {
  WindowAccumulator acc(window_index, phase, start, node_count);
  for (const DeliveryEvent& d : deliveries) acc.add_delivery(d.latency, d.flits);
  for (const EnergyEvent& e : energy) {
    acc.add_energy(e.joules);
    if (e.kind == EnergyKind::OpticalLink) acc.add_bus_flit();
  }
  return acc.close(end);
}

WindowMetrics sum_metrics(std::span<const WindowMetrics> rows) {
  WindowMetrics total;
  if (rows.empty()) return total;
  total.start_cycle = rows.front().start_cycle;
  total.end_cycle = rows.back().end_cycle;
  for (const WindowMetrics& r : rows) {
    total.delivered_packets += r.delivered_packets;
    total.delivered_flits += r.delivered_flits;
    total.total_latency_cycles += r.total_latency_cycles;
    total.max_latency_cycles = std::max(total.max_latency_cycles, r.max_latency_cycles);
    total.dynamic_energy_joules += r.dynamic_energy_joules;
    total.bus_flit_count += r.bus_flit_count;
    if (total.queue_peak.size() < r.queue_peak.size()) total.queue_peak.resize(r.queue_peak.size(), 0);
    for (std::size_t i = 0; i < r.queue_peak.size(); ++i) {
      total.queue_peak[i] = std::max(total.queue_peak[i], r.queue_peak[i]);
    }
  }
  return total;
}

std::optional<double> normalized(double value, double reference) {
  if (reference == 0.0) return std::nullopt;
  return value / reference;
}

}  // namespace xnoc
