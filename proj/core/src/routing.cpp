// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/routing.hpp"

#include "xnoc/errors.hpp"

namespace xnoc {

Port xy_route(NodeId cur, NodeId dst, const MeshSpec& spec) {
  const Coord c = coord_of(cur, spec);
  const Coord d = coord_of(dst, spec);
  if (d.col > c.col) return Port::East;
  if (d.col < c.col) return Port::West;
  if (d.row > c.row) return Port::South;
  if (d.row < c.row) return Port::North;
  throw InvariantError("xy_route called with cur == dst");
}

Port xy_star_route(NodeId cur, NodeId dst, const BusAllocation& bus, const MeshSpec& spec) {
  if (bus.active) {
    if (cur == bus.src && dst == bus.dst) return Port::Optical;
    if (bus.bidirectional && cur == bus.dst && dst == bus.src) return Port::Optical;
  }
  return xy_route(cur, dst, spec);
}

NodeId next_hop(NodeId cur, Port port, const BusAllocation& bus, const MeshSpec& spec) {
  const Coord c = coord_of(cur, spec);
  switch (port) {
    case Port::North: return node_of({c.row - 1, c.col}, spec);
    case Port::South: return node_of({c.row + 1, c.col}, spec);
    case Port::East: return node_of({c.row, c.col + 1}, spec);
    case Port::West: return node_of({c.row, c.col - 1}, spec);
    case Port::Optical:
      if (cur == bus.src) return bus.dst;
      if (bus.bidirectional && cur == bus.dst) return bus.src;
      throw InvariantError("optical hop from a node that does not own the bus");
    case Port::Local:
    case Port::Reconfig:
      return cur;
  }
  return cur;
}

}  // namespace xnoc
