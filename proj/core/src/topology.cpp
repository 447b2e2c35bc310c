// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/topology.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "xnoc/errors.hpp"

namespace xnoc {

void MeshSpec::validate() const {
  if (width < 2 || height < 2) {
    throw ConfigError("mesh must be at least 2x2, got " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
  if (width > 1024 || height > 1024) throw ConfigError("mesh dimension above 1024");
  if (!(spacing_mm > 0.0) || !std::isfinite(spacing_mm)) throw ConfigError("spacing_mm must be > 0");
  if (!(clock_ghz > 0.0) || !std::isfinite(clock_ghz)) throw ConfigError("clock_ghz must be > 0");
}

Coord coord_of(NodeId node, const MeshSpec& spec) {
  if (!spec.contains(node)) {
    throw InvalidNodeError("node " + std::to_string(node.index) + " outside " +
                           std::to_string(spec.width) + "x" + std::to_string(spec.height) + " mesh");
  }
  const int i = static_cast<int>(node.index);
  return {i / spec.width, i % spec.width};
}

NodeId node_of(Coord c, const MeshSpec& spec) {
  if (c.row < 0 || c.row >= spec.height || c.col < 0 || c.col >= spec.width) {
    throw InvalidNodeError("coordinate (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                           ") outside mesh");
  }
  return NodeId{static_cast<std::uint32_t>(c.row * spec.width + c.col)};
}

int manhattan_distance(NodeId a, NodeId b, const MeshSpec& spec) {
  const Coord ca = coord_of(a, spec);
  const Coord cb = coord_of(b, spec);
  return std::abs(ca.row - cb.row) + std::abs(ca.col - cb.col);
}

std::vector<Neighbor> mesh_neighbors(NodeId node, const MeshSpec& spec) {
  const Coord c = coord_of(node, spec);
  std::vector<Neighbor> out;
  out.reserve(4);
  if (c.row > 0) out.push_back({Port::North, node_of({c.row - 1, c.col}, spec)});
  if (c.row + 1 < spec.height) out.push_back({Port::South, node_of({c.row + 1, c.col}, spec)});
  if (c.col + 1 < spec.width) out.push_back({Port::East, node_of({c.row, c.col + 1}, spec)});
  if (c.col > 0) out.push_back({Port::West, node_of({c.row, c.col - 1}, spec)});
  return out;
}

int serpentine_index(NodeId node, const MeshSpec& spec) {
  const Coord c = coord_of(node, spec);
  const int along = (c.row % 2 == 0) ? c.col : spec.width - 1 - c.col;
  return c.row * spec.width + along;
}

NodeId node_at_serpentine(int index, const MeshSpec& spec) {
  if (index < 0 || index >= spec.node_count()) {
    throw InvalidNodeError("serpentine index " + std::to_string(index) + " out of range");
  }
  const int row = index / spec.width;
  const int along = index % spec.width;
  const int col = (row % 2 == 0) ? along : spec.width - 1 - along;
  return node_of({row, col}, spec);
}

double bus_span_mm(NodeId a, NodeId b, const MeshSpec& spec) {
  if (a == b) throw DegenerateSpanError("bus span of a node to itself");
  const int d = std::abs(serpentine_index(a, spec) - serpentine_index(b, spec));
  return d * spec.spacing_mm;
}

}  // namespace xnoc
