// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xnoc/metrics.hpp"
#include "xnoc/reconfig.hpp"
#include "xnoc/router.hpp"
#include "xnoc/topology.hpp"
#include "xnoc/traffic.hpp"

namespace xnoc {

enum class Mode { Baseline, Static, Adaptive };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

/// Traffic read from a trace file. The horizon defaults to last cycle + 1.
struct TraceFile {
  std::string path;
  std::optional<Cycle> duration;

  friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

/// Traffic supplied in memory, mostly for tests.
struct InlineTrace {
  std::vector<TraceRecord> records;
  std::optional<Cycle> duration;

  friend bool operator==(const InlineTrace&, const InlineTrace&) = default;
};

using TrafficSource = std::variant<TraceFile, InlineTrace, SyntheticSpec>;

struct SimConfig {
  MeshSpec mesh;
  RouterConfig router;
  Mode mode = Mode::Adaptive;
  ControllerParams controller;
  EnergyModel energy;
  TrafficSource traffic = SyntheticSpec{};
  Cycle max_cycles = 0;  // 0: 2 * horizon + 100000
  bool drain = true;
  std::uint64_t seed = 1;  // drives synthetic traffic
  bool check_invariants = false;

  /// Throws ConfigError.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Parses the JSON config schema. Relative trace paths resolve against
/// `base_dir`. Unknown keys are rejected. Throws ConfigError.
SimConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
SimConfig load_config(const std::filesystem::path& path);

/// Canonical JSON rendering of a config, keys sorted.
std::string config_to_json(const SimConfig& config, int indent = 2);

/// The traffic records a run will inject, and the cycle injection ends.
struct MaterializedTraffic {
  std::vector<TraceRecord> records;
  Cycle horizon = 0;
};

MaterializedTraffic materialize_traffic(const SimConfig& config);

}  // namespace xnoc
