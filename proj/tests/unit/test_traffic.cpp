// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "xnoc/errors.hpp"
#include "xnoc/packet.hpp"
#include "xnoc/traffic.hpp"

namespace xnoc {
namespace {

const MeshSpec k4{4, 4};

TEST(Trace, ParsesRecordsAndSkipsComments) {
  std::istringstream in("# header\n\n0 0 15 64\n  3 2 1 8   # inline\n3\t4 4 1\n");
  const auto recs = load_trace(in, k4);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0], (TraceRecord{0, NodeId{0}, NodeId{15}, 64}));
  EXPECT_EQ(recs[1], (TraceRecord{3, NodeId{2}, NodeId{1}, 8}));
  EXPECT_EQ(recs[2], (TraceRecord{3, NodeId{4}, NodeId{4}, 1}));
}

TEST(Trace, MalformedLinesReportTheirLine) {
  std::istringstream missing("0 0 1 8\n1 0 1\n");
  try {
    load_trace(missing, k4);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream junk("0 0 1 8x\n");
  EXPECT_THROW(load_trace(junk, k4), ParseError);
  std::istringstream extra("0 0 1 8 9\n");
  EXPECT_THROW(load_trace(extra, k4), ParseError);
}

TEST(Trace, SemanticErrors) {
  std::istringstream range("0 0 16 8\n");
  EXPECT_THROW(load_trace(range, k4), TraceValidationError);
  std::istringstream zero("0 0 1 0\n");
  EXPECT_THROW(load_trace(zero, k4), TraceValidationError);
  std::istringstream backwards("5 0 1 8\n4 0 1 8\n");
  EXPECT_THROW(load_trace(backwards, k4), TraceValidationError);
  std::istringstream negative("-1 0 1 8\n");
  EXPECT_THROW(load_trace(negative, k4), TraceValidationError);
}

TEST(Trace, SaveLoadRoundTrip) {
  SyntheticSpec s;
  s.duration = 2000;
  s.injection_rate = 0.2;
  const auto recs = generate(s, k4);
  std::stringstream ss;
  save_trace(ss, recs);
  EXPECT_EQ(load_trace(ss, k4), recs);
}

TEST(Packets, FlitsRoundUp) {
  EXPECT_EQ(flits_for_bytes(64, 64), 8u);
  EXPECT_EQ(flits_for_bytes(65, 64), 9u);
  EXPECT_EQ(flits_for_bytes(1, 64), 1u);
  EXPECT_EQ(flits_for_bytes(8, 64), 1u);
  EXPECT_EQ(flits_for_bytes(9, 32), 3u);
}

TEST(Patterns, Names) {
  for (const Pattern p : {Pattern::Fcp, Pattern::Mfm, Pattern::Uniform}) EXPECT_EQ(parse_pattern(to_string(p)), p);
  EXPECT_THROW(parse_pattern("tornado"), ConfigError);
}

TEST(Generate, DeterministicPerSeed) {
  SyntheticSpec s;
  s.duration = 5000;
  const auto a = generate(s, k4);
  EXPECT_EQ(a, generate(s, k4));
  s.seed = 2;
  EXPECT_NE(a, generate(s, k4));
}

TEST(Generate, ZeroRateIsSilent) {
  SyntheticSpec s;
  s.injection_rate = 0.0;
  s.duration = 1000;
  EXPECT_TRUE(generate(s, k4).empty());
}

TEST(Generate, UniformRateAndDestinations) {
  const MeshSpec m{8, 8};
  SyntheticSpec s;
  s.duration = 100000;
  s.injection_rate = 0.05;
  const auto recs = generate(s, m);
  double flits = 0;
  std::set<std::uint32_t> dsts;
  Cycle last = 0;
  for (const TraceRecord& r : recs) {
    ASSERT_NE(r.src, r.dst);
    ASSERT_GE(r.cycle, last);
    ASSERT_LT(r.cycle, s.duration);
    last = r.cycle;
    flits += flits_for_bytes(r.size_bytes, 64);
    if (r.src == NodeId{0}) dsts.insert(r.dst.index);
  }
  const double rate = flits / (64.0 * static_cast<double>(s.duration));
  EXPECT_NEAR(rate, 0.05, 0.05 * 0.05);
  EXPECT_EQ(dsts.size(), 63u);
}

TEST(Generate, FcpSendsTheHotShareToThePartner) {
  SyntheticSpec s;
  s.pattern = Pattern::Fcp;
  s.duration = 200000;
  s.injection_rate = 0.2;
  s.fcp.hot_pairs = {{NodeId{0}, NodeId{15}}};
  s.fcp.hot_share = 0.5;
  std::size_t from_hot = 0;
  std::size_t to_partner = 0;
  for (const TraceRecord& r : generate(s, k4)) {
    if (r.src == NodeId{0} || r.src == NodeId{15}) {
      ++from_hot;
      if (r.dst.index == 15 - r.src.index) ++to_partner;
    }
  }
  // Uniform draws also reach the partner one time in 15.
  const double expected = 0.5 + 0.5 / 15.0;
  EXPECT_NEAR(static_cast<double>(to_partner) / static_cast<double>(from_hot), expected, 0.02);

  s.fcp.hot_share = 1.0;
  for (const TraceRecord& r : generate(s, k4)) {
    if (r.src == NodeId{0}) {
      ASSERT_EQ(r.dst, NodeId{15});
    }
    if (r.src == NodeId{15}) {
      ASSERT_EQ(r.dst, NodeId{0});
    }
  }
}

TEST(Generate, MfmFewSetSitsInTheCenter) {
  SyntheticSpec s;
  s.pattern = Pattern::Mfm;
  const auto few = mfm_few_set(s, MeshSpec{});
  ASSERT_EQ(few.size(), 16u);
  for (const NodeId n : few) {
    const auto r = n.index / 16;
    const auto c = n.index % 16;
    EXPECT_TRUE(r >= 6 && r <= 9 && c >= 6 && c <= 9) << n.index;
  }
}

TEST(Generate, MfmRandomPlacementIsSeeded) {
  SyntheticSpec s;
  s.pattern = Pattern::Mfm;
  s.mfm.placement = FewPlacement::Random;
  s.mfm.few_count = 5;
  const auto a = mfm_few_set(s, MeshSpec{});
  EXPECT_EQ(a.size(), 5u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::set<NodeId>(a.begin(), a.end()).size(), 5u);
  EXPECT_EQ(a, mfm_few_set(s, MeshSpec{}));
  s.seed = 99;
  EXPECT_NE(a, mfm_few_set(s, MeshSpec{}));
}

TEST(Generate, MfmAlternatesDirections) {
  SyntheticSpec s;
  s.pattern = Pattern::Mfm;
  s.duration = 4000;
  s.injection_rate = 0.3;
  s.mfm.few_count = 2;
  s.mfm.many_to_few_cycles = 1000;
  s.mfm.few_to_many_cycles = 500;
  const auto few = mfm_few_set(s, k4);
  const std::set<NodeId> few_set(few.begin(), few.end());
  std::size_t inbound = 0;
  std::size_t outbound = 0;
  for (const TraceRecord& r : generate(s, k4)) {
    const bool to_few_phase = r.cycle % 1500 < 1000;
    if (to_few_phase) {
      ASSERT_FALSE(few_set.count(r.src));
      ASSERT_TRUE(few_set.count(r.dst));
      ++inbound;
    } else {
      ASSERT_TRUE(few_set.count(r.src));
      ASSERT_FALSE(few_set.count(r.dst));
      ++outbound;
    }
  }
  EXPECT_GT(inbound, 0u);
  EXPECT_GT(outbound, 0u);
}

TEST(Generate, RejectsBadSpecs) {
  SyntheticSpec s;
  s.injection_rate = 1.5;
  EXPECT_THROW(generate(s, k4), ConfigError);
  s = {};
  s.pattern = Pattern::Fcp;
  s.fcp.hot_pairs = {{NodeId{2}, NodeId{2}}};
  EXPECT_THROW(generate(s, k4), ConfigError);
  s.fcp.hot_pairs = {{NodeId{0}, NodeId{1}}, {NodeId{1}, NodeId{2}}};
  EXPECT_THROW(generate(s, k4), ConfigError);
  s.fcp.hot_pairs = {{NodeId{0}, NodeId{16}}};
  EXPECT_THROW(generate(s, k4), ConfigError);
  s = {};
  s.pattern = Pattern::Mfm;
  s.mfm.few_count = 16;
  EXPECT_THROW(generate(s, k4), ConfigError);
  s = {};
  s.packet_bytes = 0;
  EXPECT_THROW(generate(s, k4), ConfigError);
}

}  // namespace
}  // namespace xnoc
