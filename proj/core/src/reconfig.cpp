// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/reconfig.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "xnoc/errors.hpp"
#include "xnoc/report_io.hpp"

namespace xnoc {

void TrafficStats::record_flits(NodeId dst, std::uint64_t count) {
  per_dest_flits[dst.index] += count;
  total_flits += count;
}

void TrafficStats::reset() {
  per_dest_flits.clear();
  total_flits = 0;
}

namespace {

std::uint32_t saturate32(std::uint64_t v) {
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(v, std::numeric_limits<std::uint32_t>::max()));
}

}  // namespace

NodeReport make_report(const TrafficStats& stats) {
  NodeReport r{stats.node, stats.node, 0, saturate32(stats.total_flits)};
  std::uint64_t best = 0;
  // Ascending keys, strict comparison: ties keep the lowest id.
  for (const auto& [dst, count] : stats.per_dest_flits) {
    if (count > best) {
      best = count;
      r.top_dest = NodeId{dst};
    }
  }
  r.top_count = saturate32(best);
  return r;
}

std::array<std::uint8_t, kReportPayloadBytes> pack_report(const NodeReport& report) {
  if (report.top_dest.index > 0xFFFF) throw ProtocolError("node address does not fit the report");
  std::array<std::uint8_t, kReportPayloadBytes> out{};
  for (int i = 0; i < 4; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(report.total_count >> (8 * i));
    out[static_cast<std::size_t>(4 + i)] = static_cast<std::uint8_t>(report.top_count >> (8 * i));
  }
  out[8] = static_cast<std::uint8_t>(report.top_dest.index);
  out[9] = static_cast<std::uint8_t>(report.top_dest.index >> 8);
  return out;
}

NodeReport unpack_report(NodeId sender, std::span<const std::uint8_t, kReportPayloadBytes> bytes) {
  NodeReport r{sender, {}, 0, 0};
  for (int i = 0; i < 4; ++i) {
    r.total_count |= static_cast<std::uint32_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
    r.top_count |= static_cast<std::uint32_t>(bytes[static_cast<std::size_t>(4 + i)]) << (8 * i);
  }
  r.top_dest = NodeId{static_cast<std::uint32_t>(bytes[8]) | (static_cast<std::uint32_t>(bytes[9]) << 8)};
  if (r.top_count > r.total_count) throw ProtocolError("report top count exceeds total");
  return r;
}

std::optional<BusAllocation> select_bus_owners(std::span<const NodeReport> reports, const MeshSpec& spec,
                                               int min_hops) {
  std::vector<bool> seen(static_cast<std::size_t>(spec.node_count()), false);
  const NodeReport* best = nullptr;
  for (const NodeReport& r : reports) {
    if (!spec.contains(r.node) || !spec.contains(r.top_dest)) {
      throw ProtocolError("report names a node outside the mesh");
    }
    if (seen[r.node.index]) throw ProtocolError("duplicate report from node " + std::to_string(r.node.index));
    seen[r.node.index] = true;
    if (r.top_count == 0 || r.top_dest == r.node) continue;
    if (manhattan_distance(r.node, r.top_dest, spec) < min_hops) continue;
    if (best == nullptr ||
        std::make_tuple(-static_cast<std::int64_t>(r.top_count), r.node.index, r.top_dest.index) <
            std::make_tuple(-static_cast<std::int64_t>(best->top_count), best->node.index, best->top_dest.index)) {
      best = &r;
    }
  }
  if (best == nullptr) return std::nullopt;
  return BusAllocation{best->node, best->top_dest, true, false};
}

void ControllerParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("controller.alpha must be in (0, 1]");
  if (window_min < 1) throw ConfigError("controller.window_min must be >= 1");
  if (growth_cap < 1) throw ConfigError("controller.growth_cap must be >= 1");
  if (initial_window < window_min) throw ConfigError("controller.initial_window must be >= window_min");
  if (!(bootstrap_factor > 0.0) || !std::isfinite(bootstrap_factor)) {
    throw ConfigError("controller.bootstrap_factor must be > 0");
  }
  if (reconfig_period < 1) throw ConfigError("controller.reconfig_period must be >= 1");
  if (min_hops < 0) throw ConfigError("controller.min_hops must be >= 0");
}

double round_half_up(double x) {
  const double f = std::floor(x);
  return (x - f >= 0.5) ? f + 1.0 : f;
}

double window_gradient(const WindowState& s) {
  if (s.cur_window == s.prev_window) return 0.0;
  return (s.cur_latency - s.prev_latency) / static_cast<double>(s.cur_window - s.prev_window);
}

namespace {

Cycle clamp_window(double w, Cycle cur, const ControllerParams& p) {
  w = std::min(w, static_cast<double>(p.growth_cap) * static_cast<double>(cur));
  w = std::max(w, static_cast<double>(p.window_min));
  return static_cast<Cycle>(w);
}

}  // namespace

Cycle next_window_length(const WindowState& s, const ControllerParams& p) {
  const double raw = static_cast<double>(s.cur_window) - p.alpha * window_gradient(s);
  return clamp_window(round_half_up(raw), s.cur_window, p);
}

WindowController::WindowController(const ControllerParams& params, bool adaptive)
    : params_(params), adaptive_(adaptive) {
  params_.validate();
  state_.cur_window = params_.initial_window;
}

WindowStep WindowController::complete_window(double latency_cost) {
  WindowStep step;
  step.old_window = state_.cur_window;
  state_.cur_latency = latency_cost;
  if (!adaptive_) {
    step.new_window = state_.cur_window;
  } else if (completed_ == 0) {
    const double grown = round_half_up(static_cast<double>(state_.cur_window) * params_.bootstrap_factor);
    step.new_window = clamp_window(grown, state_.cur_window, params_);
  } else {
    step.gradient = window_gradient(state_);
    step.new_window = next_window_length(state_, params_);
  }
  state_.prev_window = state_.cur_window;
  state_.prev_latency = latency_cost;
  state_.cur_window = step.new_window;
  state_.cur_latency = 0.0;
  ++completed_;
  return step;
}

void write_progression_csv(std::ostream& os, std::span<const ProgressionRecord> records) {
  os << "step,boundary_cycle,old_window,new_window,gradient,bus_src,bus_dst,window_latency\n";
  for (const ProgressionRecord& r : records) {
    os << r.step << ',' << r.boundary_cycle << ',' << r.old_window << ',' << r.new_window << ','
       << format_double(r.gradient) << ',';
    if (r.bus) {
      os << r.bus->src.index << ',' << r.bus->dst.index;
    } else {
      os << "-1,-1";
    }
    os << ',' << format_double(r.window_latency) << '\n';
  }
}

namespace {

template <typename T>
T parse_field(std::string_view text, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "bad field '" + std::string(text) + "'");
  return value;
}

}  // namespace

std::vector<ProgressionRecord> read_progression_csv(std::istream& is) {
  std::vector<ProgressionRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line.rfind("step,", 0) != 0) throw ParseError(1, "missing progression header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 8) throw ParseError(lineno, "expected 8 fields");
    ProgressionRecord r;
    r.step = parse_field<std::size_t>(fields[0], lineno);
    r.boundary_cycle = parse_field<Cycle>(fields[1], lineno);
    r.old_window = parse_field<Cycle>(fields[2], lineno);
    r.new_window = parse_field<Cycle>(fields[3], lineno);
    r.gradient = parse_field<double>(fields[4], lineno);
    const auto src = parse_field<std::int64_t>(fields[5], lineno);
    const auto dst = parse_field<std::int64_t>(fields[6], lineno);
    if (src >= 0 && dst >= 0) {
      r.bus = BusAllocation{NodeId{static_cast<std::uint32_t>(src)}, NodeId{static_cast<std::uint32_t>(dst)}, true,
                            false};
    } else if (src != -1 || dst != -1) {
      throw ParseError(lineno, "bus columns must both be -1 or both be node ids");
    }
    r.window_latency = parse_field<double>(fields[7], lineno);
    out.push_back(r);
  }
  return out;
}

}  // namespace xnoc
