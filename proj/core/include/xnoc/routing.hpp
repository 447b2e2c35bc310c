// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "xnoc/topology.hpp"
#include "xnoc/types.hpp"

namespace xnoc {

/// Which ordered node pair currently owns the optical express bus.
struct BusAllocation {
  NodeId src;
  NodeId dst;
  bool active = false;
  bool bidirectional = false;

  friend bool operator==(const BusAllocation&, const BusAllocation&) = default;
};

/// Dimension-ordered routing: correct the column first, then the row.
/// Requires cur != dst.
Port xy_route(NodeId cur, NodeId dst, const MeshSpec& spec);

/// X-Y routing, except that a packet standing at the bus source and headed
/// exactly for the bus destination takes the optical port (and the reverse
/// when the bus is bidirectional). Requires cur != dst.
Port xy_star_route(NodeId cur, NodeId dst, const BusAllocation& bus, const MeshSpec& spec);

/// Node reached by leaving `cur` through `port`. Optical resolves through the
/// bus; Local returns cur.
NodeId next_hop(NodeId cur, Port port, const BusAllocation& bus, const MeshSpec& spec);

}  // namespace xnoc
