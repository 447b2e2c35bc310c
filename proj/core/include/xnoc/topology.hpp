// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

#include "xnoc/types.hpp"

namespace xnoc {

/// Geometry of a width x height mesh.
struct MeshSpec {
  int width = 16;
  int height = 16;
  double spacing_mm = 1.0;  // distance between adjacent cores
  double clock_ghz = 0.78125;

  int node_count() const { return width * height; }
  bool contains(NodeId n) const { return n.index < static_cast<std::uint32_t>(node_count()); }

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;

  friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

struct Coord {
  int row = 0;
  int col = 0;

  friend constexpr bool operator==(const Coord&, const Coord&) = default;
};

/// Throws InvalidNodeError for an out-of-range index.
Coord coord_of(NodeId node, const MeshSpec& spec);
NodeId node_of(Coord c, const MeshSpec& spec);

int manhattan_distance(NodeId a, NodeId b, const MeshSpec& spec);

struct Neighbor {
  Port port;
  NodeId node;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Mesh neighbors in port order North, South, East, West.
std::vector<Neighbor> mesh_neighbors(NodeId node, const MeshSpec& spec);

/// Position of `node` along the serpentine bus. Even rows run west to east,
/// odd rows east to west, starting at (0,0).
int serpentine_index(NodeId node, const MeshSpec& spec);
NodeId node_at_serpentine(int index, const MeshSpec& spec);

/// Waveguide length between two bus taps. Throws DegenerateSpanError if a == b.
double bus_span_mm(NodeId a, NodeId b, const MeshSpec& spec);

}  // namespace xnoc
