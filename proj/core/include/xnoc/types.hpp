// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

namespace xnoc {

/// Simulated clock cycles. Signed so that differences are well defined.
using Cycle = std::int64_t;

/// Row-major node index into a mesh: index = row * width + col.
struct NodeId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Router port. Baseline routers use the first five, hybrid routers all seven.
enum class Port : std::uint8_t {
  North = 0,  // toward row 0
  South = 1,
  East = 2,  // toward the last column
  West = 3,
  Local = 4,
  Optical = 5,
  Reconfig = 6,
};

inline constexpr int kBasePortCount = 5;
inline constexpr int kHybridPortCount = 7;
inline constexpr int kMaxPorts = kHybridPortCount;

constexpr int port_index(Port p) { return static_cast<int>(p); }

constexpr bool is_mesh_direction(Port p) { return port_index(p) < 4; }

/// The input port on the neighbor that a flit leaving through `p` lands on.
constexpr Port opposite(Port p) {
  switch (p) {
    case Port::North: return Port::South;
    case Port::South: return Port::North;
    case Port::East: return Port::West;
    case Port::West: return Port::East;
    default: return p;
  }
}

std::string_view to_string(Port p);

}  // namespace xnoc
