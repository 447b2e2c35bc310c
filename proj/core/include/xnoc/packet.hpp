// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>

#include "xnoc/types.hpp"

namespace xnoc {

struct Packet {
  std::uint32_t id = 0;
  NodeId src;
  NodeId dst;
  std::uint32_t size_flits = 1;
  Cycle inject_cycle = 0;
};

enum class FlitKind : std::uint8_t { Head, Body, Tail, HeadTail };

constexpr bool is_head(FlitKind k) { return k == FlitKind::Head || k == FlitKind::HeadTail; }
constexpr bool is_tail(FlitKind k) { return k == FlitKind::Tail || k == FlitKind::HeadTail; }

constexpr FlitKind flit_kind(std::uint32_t seq, std::uint32_t size_flits) {
  if (size_flits == 1) return FlitKind::HeadTail;
  if (seq == 0) return FlitKind::Head;
  return seq + 1 == size_flits ? FlitKind::Tail : FlitKind::Body;
}

/// One flow-control unit. The destination rides along so routers never look
/// up the packet table.
struct Flit {
  std::uint32_t packet = 0;
  NodeId dst;
  std::uint16_t seq = 0;
  FlitKind kind = FlitKind::HeadTail;
};

/// Flits needed for a payload of `bytes`, rounded up.
constexpr std::uint32_t flits_for_bytes(std::uint64_t bytes, std::uint32_t flit_bits) {
  return static_cast<std::uint32_t>((bytes * 8 + flit_bits - 1) / flit_bits);
}

}  // namespace xnoc
