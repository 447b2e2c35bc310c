// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "xnoc/reconfig.hpp"
#include "xnoc/router.hpp"
#include "xnoc/routing.hpp"
#include "xnoc/topology.hpp"

// Oracles used by the test and acceptance suites. Nothing here calls into the
// engine, network, or controller arithmetic; only domain types are shared.
namespace xnoc::validation {

/// Closed-form latency of a lone packet on an empty network:
/// 2 * local + (H + 1) * router + H * link + (size - 1), with the optical hop
/// substituted when X-Y* diverts the packet onto `bus`.
Cycle zero_load_latency_oracle(NodeId src, NodeId dst, std::uint32_t size_flits,
                               const MeshSpec& mesh, const RouterConfig& router,
                               const BusAllocation& bus = {});

struct CheckResult {
  bool ok = true;
  std::string failure;
  std::size_t cases = 0;
};

/// Walks xy_star_route hop by hop from every node to every other node and
/// requires arrival within width + height + 1 steps. Also requires the
/// channel dependency graph of all those routes to be acyclic.
CheckResult exhaustive_route_check(const MeshSpec& mesh, const BusAllocation& bus);

/// exhaustive_route_check over no bus and every ordered bus placement, in
/// both unidirectional and bidirectional form.
CheckResult exhaustive_route_check_all_buses(const MeshSpec& mesh);

struct ReplayParams {
  bool adaptive = true;
  double alpha = 0.5;
  Cycle window_min = 100;
  std::uint32_t growth_cap = 10;
  double bootstrap_factor = 1.1;
};

struct ReplayResult {
  bool ok = true;
  std::optional<std::size_t> failing_step;
  std::string message;
};

/// Re-derives every next window from the logged windows and latencies.
ReplayResult controller_replay(std::span<const ProgressionRecord> log, const ReplayParams& params);

/// Checks window_min <= w(t+1) <= growth_cap * w(t) on every step.
CheckResult window_bounds_check(std::span<const ProgressionRecord> log, Cycle window_min,
                                std::uint32_t growth_cap);

/// Shape of a window-progression series: a rise to the global peak followed
/// by a roll-off.
struct WindowTrend {
  std::size_t peak_step = 0;
  Cycle peak_window = 0;
  Cycle first_window = 0;
  Cycle last_window = 0;
  std::size_t rising_steps = 0;     // steps before the peak that increase
  std::size_t falling_steps = 0;    // steps after the peak that decrease
  bool monotone_rise = false;       // non-decreasing up to the peak
  bool rolls_off = false;           // ends below the peak
};

WindowTrend window_trend(std::span<const ProgressionRecord> log);

}  // namespace xnoc::validation
