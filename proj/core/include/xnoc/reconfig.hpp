// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "xnoc/routing.hpp"
#include "xnoc/topology.hpp"

namespace xnoc {

// ---------------------------------------------------------------------------
// Per-node traffic accounting and reports to the reconfiguration controller.

struct TrafficStats {
  NodeId node;
  std::map<std::uint32_t, std::uint64_t> per_dest_flits;
  std::uint64_t total_flits = 0;

  void record_flit(NodeId dst) { record_flits(dst, 1); }
  void record_flits(NodeId dst, std::uint64_t count);
  void reset();
};

struct NodeReport {
  NodeId node;
  NodeId top_dest;  // == node when the window was idle
  std::uint32_t top_count = 0;
  std::uint32_t total_count = 0;

  friend bool operator==(const NodeReport&, const NodeReport&) = default;
};

/// Wire size of a packed report: 4-byte total, 4-byte top count, 2-byte address.
inline constexpr std::size_t kReportPayloadBytes = 10;

/// Counts saturate at the 4-byte limit.
NodeReport make_report(const TrafficStats& stats);

std::array<std::uint8_t, kReportPayloadBytes> pack_report(const NodeReport& report);
NodeReport unpack_report(NodeId sender, std::span<const std::uint8_t, kReportPayloadBytes> bytes);

/// Picks the report with the largest top_count among pairs at least
/// `min_hops` apart; ties go to the lexicographically lowest (src, dst).
/// Returns nullopt when no report has traffic. Throws ProtocolError if a node
/// reports twice.
std::optional<BusAllocation> select_bus_owners(std::span<const NodeReport> reports,
                                               const MeshSpec& spec, int min_hops = 0);

// ---------------------------------------------------------------------------
// Operation-window adaptation.

enum class LatencyCost { Total, Mean };

struct ControllerParams {
  double alpha = 0.5;
  Cycle window_min = 100;
  std::uint32_t growth_cap = 10;
  Cycle initial_window = 1000;
  double bootstrap_factor = 1.1;
  Cycle reconfig_period = 50;
  LatencyCost latency_cost = LatencyCost::Total;
  int min_hops = 0;
  bool bidirectional = false;
  bool strict_pause = false;

  void validate() const;

  friend bool operator==(const ControllerParams&, const ControllerParams&) = default;
};

/// Two most recent completed windows and their latency cost.
struct WindowState {
  Cycle cur_window = 0;
  Cycle prev_window = 0;
  double cur_latency = 0.0;
  double prev_latency = 0.0;
};

/// First-order difference of latency over window length; 0 when the two
/// windows have equal length.
double window_gradient(const WindowState& state);

/// cur - alpha * gradient, rounded half up, capped at growth_cap * cur, then
/// floored at window_min.
Cycle next_window_length(const WindowState& state, const ControllerParams& params);

/// round(x) with ties toward +infinity.
double round_half_up(double x);

struct WindowStep {
  Cycle old_window = 0;
  Cycle new_window = 0;
  double gradient = 0.0;
};

/// Stateful window controller. Window 1 uses initial_window, window 2 is
/// initial_window * bootstrap_factor, and gradient steps start after that.
/// Static controllers never change the window.
class WindowController {
 public:
  WindowController(const ControllerParams& params, bool adaptive);

  Cycle current_window() const { return state_.cur_window; }
  std::size_t completed_windows() const { return completed_; }
  const WindowState& state() const { return state_; }

  /// Closes the current window with its latency cost and returns the step.
  WindowStep complete_window(double latency_cost);

 private:
  ControllerParams params_;
  bool adaptive_;
  WindowState state_;
  std::size_t completed_ = 0;
};

/// One line of the window-progression log.
struct ProgressionRecord {
  std::size_t step = 0;
  Cycle boundary_cycle = 0;
  Cycle old_window = 0;
  Cycle new_window = 0;
  double gradient = 0.0;
  std::optional<BusAllocation> bus;
  double window_latency = 0.0;

  friend bool operator==(const ProgressionRecord&, const ProgressionRecord&) = default;
};

void write_progression_csv(std::ostream& os, std::span<const ProgressionRecord> records);
std::vector<ProgressionRecord> read_progression_csv(std::istream& is);

}  // namespace xnoc
