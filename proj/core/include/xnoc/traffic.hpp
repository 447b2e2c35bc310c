// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "xnoc/topology.hpp"
#include "xnoc/types.hpp"

namespace xnoc {

struct TraceRecord {
  Cycle cycle = 0;
  NodeId src;
  NodeId dst;
  std::uint32_t size_bytes = 1;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Reads `cycle src dst size_bytes` lines. Blank lines and `#` comments are
/// skipped. Throws ParseError on malformed lines and TraceValidationError on
/// out-of-range nodes, zero sizes, or decreasing cycles.
std::vector<TraceRecord> load_trace(std::istream& is, const MeshSpec& spec);

/// Writes the format load_trace reads: ASCII, single spaces, LF endings.
void save_trace(std::ostream& os, std::span<const TraceRecord> records);

enum class Pattern { Fcp, Mfm, Uniform };

std::string_view to_string(Pattern p);
Pattern parse_pattern(std::string_view name);

enum class FewPlacement { Center, Random };

struct FcpParams {
  std::vector<std::pair<NodeId, NodeId>> hot_pairs;
  double hot_share = 0.5;  // fraction of a hot node's packets sent to its partner

  friend bool operator==(const FcpParams&, const FcpParams&) = default;
};

/// Many-to-few-to-many: alternating phases in which the many nodes send to
/// the few, then the few send to the many.
struct MfmParams {
  int few_count = 16;
  FewPlacement placement = FewPlacement::Center;
  Cycle many_to_few_cycles = 20000;
  Cycle few_to_many_cycles = 20000;

  friend bool operator==(const MfmParams&, const MfmParams&) = default;
};

struct SyntheticSpec {
  Pattern pattern = Pattern::Uniform;
  Cycle duration = 400000;
  double injection_rate = 0.05;  // flits per node per cycle
  std::uint32_t packet_bytes = 64;
  FcpParams fcp;
  MfmParams mfm;
  std::uint64_t seed = 1;

  void validate(const MeshSpec& mesh) const;

  friend bool operator==(const SyntheticSpec&, const SyntheticSpec&) = default;
};

/// Identity of the random stream behind generate(). Recorded in run metadata.
inline constexpr std::string_view kPrngIdentity = "mt19937_64/xnoc-draws-v1";

/// Deterministic for a fixed spec. Each node injects a packet in a cycle with
/// probability injection_rate / packet_flits, so the flit rate matches.
std::vector<TraceRecord> generate(const SyntheticSpec& spec, const MeshSpec& mesh,
                                  std::uint32_t flit_bits = 64);

/// The few-node set used by the mfm pattern, ascending.
std::vector<NodeId> mfm_few_set(const SyntheticSpec& spec, const MeshSpec& mesh);

}  // namespace xnoc
