// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/traffic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "xnoc/errors.hpp"
#include "xnoc/packet.hpp"

namespace xnoc {

namespace {

std::string_view next_token(std::string_view& rest) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  const std::string_view tok = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return tok;
}

std::int64_t parse_int(std::string_view tok, std::size_t line, const char* field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("bad ") + field + " '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

std::vector<TraceRecord> load_trace(std::istream& is, const MeshSpec& spec) {
  std::vector<TraceRecord> out;
  std::string text;
  std::size_t line = 0;
  Cycle last = 0;
  const auto nodes = static_cast<std::int64_t>(spec.node_count());
  while (std::getline(is, text)) {
    ++line;
    std::string_view rest(text);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    const std::string_view f0 = next_token(rest);
    if (f0.empty()) continue;
    const std::string_view f1 = next_token(rest);
    const std::string_view f2 = next_token(rest);
    const std::string_view f3 = next_token(rest);
    if (f3.empty()) throw ParseError(line, "expected 4 fields: cycle src dst size_bytes");
    if (!next_token(rest).empty()) throw ParseError(line, "trailing fields");

    const std::int64_t cycle = parse_int(f0, line, "cycle");
    const std::int64_t src = parse_int(f1, line, "src");
    const std::int64_t dst = parse_int(f2, line, "dst");
    const std::int64_t size = parse_int(f3, line, "size_bytes");
    const std::string where = "line " + std::to_string(line) + ": ";
    if (cycle < 0) throw TraceValidationError(where + "negative cycle");
    if (cycle < last) throw TraceValidationError(where + "cycles must be non-decreasing");
    if (src < 0 || src >= nodes || dst < 0 || dst >= nodes) {
      throw TraceValidationError(where + "node outside the mesh");
    }
    if (size < 1 || size > 0xFFFFFFFF) throw TraceValidationError(where + "size_bytes out of range");
    last = cycle;
    out.push_back({cycle, NodeId{static_cast<std::uint32_t>(src)}, NodeId{static_cast<std::uint32_t>(dst)},
                   static_cast<std::uint32_t>(size)});
  }
  return out;
}

void save_trace(std::ostream& os, std::span<const TraceRecord> records) {
  for (const TraceRecord& r : records) {
    os << r.cycle << ' ' << r.src.index << ' ' << r.dst.index << ' ' << r.size_bytes << '\n';
  }
}

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::Fcp: return "fcp";
    case Pattern::Mfm: return "mfm";
    case Pattern::Uniform: return "uniform";
  }
  return "?";
}

Pattern parse_pattern(std::string_view name) {
  if (name == "fcp") return Pattern::Fcp;
  if (name == "mfm") return Pattern::Mfm;
  if (name == "uniform") return Pattern::Uniform;
  throw ConfigError("unknown traffic pattern '" + std::string(name) + "'");
}

void SyntheticSpec::validate(const MeshSpec& mesh) const {
  const auto n = static_cast<std::uint32_t>(mesh.node_count());
  if (duration < 0) throw ConfigError("traffic.duration must be >= 0");
  if (!(injection_rate >= 0.0 && injection_rate <= 1.0)) {
    throw ConfigError("traffic.injection_rate must be in [0, 1]");
  }
  if (packet_bytes < 1) throw ConfigError("traffic.packet_bytes must be >= 1");
  if (pattern == Pattern::Fcp) {
    if (!(fcp.hot_share >= 0.0 && fcp.hot_share <= 1.0)) throw ConfigError("fcp.hot_share must be in [0, 1]");
    std::vector<bool> used(n, false);
    for (const auto& [a, b] : fcp.hot_pairs) {
      if (a.index >= n || b.index >= n) throw ConfigError("fcp hot pair names a node outside the mesh");
      if (a == b) throw ConfigError("fcp hot pair must join two different nodes");
      if (used[a.index] || used[b.index]) throw ConfigError("a node may belong to only one fcp hot pair");
      used[a.index] = used[b.index] = true;
    }
  }
  if (pattern == Pattern::Mfm) {
    if (mfm.few_count < 1 || static_cast<std::uint32_t>(mfm.few_count) >= n) {
      throw ConfigError("mfm.few_count must be in [1, nodes - 1]");
    }
    if (mfm.many_to_few_cycles < 1 || mfm.few_to_many_cycles < 1) {
      throw ConfigError("mfm phase lengths must be >= 1");
    }
  }
}

namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const std::uint64_t r = rng_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<NodeId> mfm_few_set(const SyntheticSpec& spec, const MeshSpec& mesh) {
  const auto n = static_cast<std::uint32_t>(mesh.node_count());
  const auto k = static_cast<std::uint32_t>(spec.mfm.few_count);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  if (spec.mfm.placement == FewPlacement::Center) {
    const auto key = [&](std::uint32_t i) {
      const auto r = static_cast<std::int64_t>(i) / mesh.width;
      const auto c = static_cast<std::int64_t>(i) % mesh.width;
      const std::int64_t dr = 2 * r - (mesh.height - 1);
      const std::int64_t dc = 2 * c - (mesh.width - 1);
      return dr * dr + dc * dc;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
  } else {
    Draws draws(spec.seed ^ 0x9E3779B97F4A7C15ull);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::uint32_t>(draws.below(n - i));
      std::swap(order[i], order[j]);
    }
  }
  order.resize(k);
  std::sort(order.begin(), order.end());
  std::vector<NodeId> out;
  out.reserve(k);
  for (const std::uint32_t i : order) out.push_back(NodeId{i});
  return out;
}

std::vector<TraceRecord> generate(const SyntheticSpec& spec, const MeshSpec& mesh, std::uint32_t flit_bits) {
  mesh.validate();
  spec.validate(mesh);
  if (flit_bits == 0) throw ConfigError("flit_bits must be >= 1");
  const std::uint32_t flits = flits_for_bytes(spec.packet_bytes, flit_bits);
  if (flits > 0xFFFF) throw ConfigError("packet of " + std::to_string(flits) + " flits exceeds 65535");
  const double p = std::min(1.0, spec.injection_rate / static_cast<double>(flits));
  const auto n = static_cast<std::uint32_t>(mesh.node_count());

  Draws draws(spec.seed);
  const auto uniform_other = [&](std::uint32_t src) {
    auto d = static_cast<std::uint32_t>(draws.below(n - 1));
    if (d >= src) ++d;
    return d;
  };

  std::vector<std::int64_t> partner(n, -1);
  for (const auto& [a, b] : spec.fcp.hot_pairs) {
    partner[a.index] = b.index;
    partner[b.index] = a.index;
  }
  std::vector<NodeId> few;
  std::vector<NodeId> many;
  std::vector<bool> is_few(n, false);
  if (spec.pattern == Pattern::Mfm) {
    few = mfm_few_set(spec, mesh);
    for (const NodeId f : few) is_few[f.index] = true;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!is_few[i]) many.push_back(NodeId{i});
    }
  }
  const Cycle mfm_period = spec.mfm.many_to_few_cycles + spec.mfm.few_to_many_cycles;

  std::vector<TraceRecord> out;
  if (p > 0.0) out.reserve(static_cast<std::size_t>(static_cast<double>(spec.duration) * n * p * 1.05) + 16);
  for (Cycle t = 0; t < spec.duration; ++t) {
    const bool to_few = spec.pattern == Pattern::Mfm && (t % mfm_period) < spec.mfm.many_to_few_cycles;
    for (std::uint32_t src = 0; src < n; ++src) {
      if (spec.pattern == Pattern::Mfm && is_few[src] == to_few) continue;
      if (!(draws.uniform01() < p)) continue;
      std::uint32_t dst = 0;
      switch (spec.pattern) {
        case Pattern::Uniform:
          dst = uniform_other(src);
          break;
        case Pattern::Fcp:
          if (partner[src] >= 0 && draws.uniform01() < spec.fcp.hot_share) {
            dst = static_cast<std::uint32_t>(partner[src]);
          } else {
            dst = uniform_other(src);
          }
          break;
        case Pattern::Mfm: {
          const std::vector<NodeId>& targets = to_few ? few : many;
          dst = targets[draws.below(targets.size())].index;
          break;
        }
      }
      out.push_back({t, NodeId{src}, NodeId{dst}, spec.packet_bytes});
    }
  }
  return out;
}

}  // namespace xnoc
