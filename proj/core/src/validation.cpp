// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/validation.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace xnoc::validation {

namespace {

struct RC {
  long r;
  long c;
};

RC rc_of(NodeId n, const MeshSpec& m) {
  return {static_cast<long>(n.index) / m.width, static_cast<long>(n.index) % m.width};
}

// Nodes visited by dimension-ordered routing, endpoints included.
std::vector<std::uint32_t> xy_path(NodeId src, NodeId dst, const MeshSpec& m) {
  RC at = rc_of(src, m);
  const RC to = rc_of(dst, m);
  std::vector<std::uint32_t> path{src.index};
  while (at.c != to.c) {
    at.c += at.c < to.c ? 1 : -1;
    path.push_back(static_cast<std::uint32_t>(at.r * m.width + at.c));
  }
  while (at.r != to.r) {
    at.r += at.r < to.r ? 1 : -1;
    path.push_back(static_cast<std::uint32_t>(at.r * m.width + at.c));
  }
  return path;
}

}  // namespace

Cycle zero_load_latency_oracle(NodeId src, NodeId dst, std::uint32_t size_flits, const MeshSpec& mesh,
                               const RouterConfig& router, const BusAllocation& bus) {
  const Cycle L = router.local_delay;
  const Cycle R = router.router_delay;
  const Cycle serial = static_cast<Cycle>(size_flits) - 1;
  if (src == dst) return 2 * L;

  const std::vector<std::uint32_t> path = xy_path(src, dst, mesh);
  const Cycle hops = static_cast<Cycle>(path.size()) - 1;
  if (bus.active) {
    std::int64_t tap = -1;
    if (dst == bus.dst) tap = bus.src.index;
    if (bus.bidirectional && dst == bus.src) tap = bus.dst.index;
    for (std::size_t i = 0; tap >= 0 && i + 1 < path.size(); ++i) {
      if (path[i] == static_cast<std::uint32_t>(tap)) {
        const auto he = static_cast<Cycle>(i);
        return 2 * L + (he + 2) * R + he * router.link_delay_electrical + router.link_delay_optical + serial;
      }
    }
  }
  return 2 * L + (hops + 1) * R + hops * router.link_delay_electrical + serial;
}

CheckResult exhaustive_route_check(const MeshSpec& mesh, const BusAllocation& bus) {
  CheckResult res;
  const long n = static_cast<long>(mesh.width) * mesh.height;
  const long channels = n * 5;
  std::vector<std::uint8_t> edge(static_cast<std::size_t>(channels * channels), 0);
  std::vector<std::vector<long>> succ(static_cast<std::size_t>(channels));
  const long max_steps = mesh.width + mesh.height + 1;

  const auto fail = [&](const std::string& why) {
    res.ok = false;
    res.failure = why;
    return res;
  };

  for (long s = 0; s < n; ++s) {
    for (long d = 0; d < n; ++d) {
      if (s == d) continue;
      ++res.cases;
      const NodeId dst{static_cast<std::uint32_t>(d)};
      long cur = s;
      long prev_channel = -1;
      long steps = 0;
      while (cur != d) {
        if (++steps > max_steps) {
          return fail("route " + std::to_string(s) + "->" + std::to_string(d) + " exceeds " +
                      std::to_string(max_steps) + " hops");
        }
        const Port p = xy_star_route(NodeId{static_cast<std::uint32_t>(cur)}, dst, bus, mesh);
        long r = cur / mesh.width;
        long c = cur % mesh.width;
        long lane = 0;
        long next = -1;
        switch (p) {
          case Port::North: lane = 0; --r; break;
          case Port::South: lane = 1; ++r; break;
          case Port::East: lane = 2; ++c; break;
          case Port::West: lane = 3; --c; break;
          case Port::Optical:
            lane = 4;
            if (!bus.active) return fail("optical hop with no active bus");
            if (cur == bus.src.index) {
              next = bus.dst.index;
            } else if (bus.bidirectional && cur == bus.dst.index) {
              next = bus.src.index;
            } else {
              return fail("optical hop from a node that is not a bus endpoint");
            }
            break;
          default:
            return fail("route " + std::to_string(s) + "->" + std::to_string(d) + " chose port " +
                        std::string(to_string(p)) + " before arrival");
        }
        if (next < 0) {
          if (r < 0 || r >= mesh.height || c < 0 || c >= mesh.width) {
            return fail("route " + std::to_string(s) + "->" + std::to_string(d) + " leaves the mesh");
          }
          next = r * mesh.width + c;
        }
        const long channel = cur * 5 + lane;
        if (prev_channel >= 0) {
          auto& e = edge[static_cast<std::size_t>(prev_channel * channels + channel)];
          if (!e) {
            e = 1;
            succ[static_cast<std::size_t>(prev_channel)].push_back(channel);
          }
        }
        prev_channel = channel;
        cur = next;
      }
    }
  }

  std::vector<long> indegree(static_cast<std::size_t>(channels), 0);
  for (const auto& out : succ) {
    for (const long t : out) ++indegree[static_cast<std::size_t>(t)];
  }
  std::vector<long> ready;
  for (long v = 0; v < channels; ++v) {
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  long removed = 0;
  while (!ready.empty()) {
    const long v = ready.back();
    ready.pop_back();
    ++removed;
    for (const long t : succ[static_cast<std::size_t>(v)]) {
      if (--indegree[static_cast<std::size_t>(t)] == 0) ready.push_back(t);
    }
  }
  if (removed != channels) return fail("channel dependency graph has a cycle");
  return res;
}

CheckResult exhaustive_route_check_all_buses(const MeshSpec& mesh) {
  CheckResult total;
  const auto absorb = [&](const CheckResult& r, const std::string& label) {
    total.cases += r.cases;
    if (!r.ok && total.ok) {
      total.ok = false;
      total.failure = label + ": " + r.failure;
    }
  };
  absorb(exhaustive_route_check(mesh, BusAllocation{}), "no bus");
  const auto n = static_cast<std::uint32_t>(mesh.width * mesh.height);
  for (std::uint32_t a = 0; a < n && total.ok; ++a) {
    for (std::uint32_t b = 0; b < n && total.ok; ++b) {
      if (a == b) continue;
      const std::string label = "bus " + std::to_string(a) + "->" + std::to_string(b);
      absorb(exhaustive_route_check(mesh, BusAllocation{NodeId{a}, NodeId{b}, true, false}), label);
      if (a < b) {
        absorb(exhaustive_route_check(mesh, BusAllocation{NodeId{a}, NodeId{b}, true, true}), label + " (both ways)");
      }
    }
  }
  return total;
}

ReplayResult controller_replay(std::span<const ProgressionRecord> log, const ReplayParams& p) {
  const auto fail = [](std::size_t i, const std::string& why) { return ReplayResult{false, i, why}; };
  for (std::size_t i = 0; i < log.size(); ++i) {
    const ProgressionRecord& r = log[i];
    if (i > 0 && r.old_window != log[i - 1].new_window) {
      return fail(i, "window does not continue from the previous step");
    }
    double expected_grad = 0.0;
    Cycle expected = r.old_window;
    if (p.adaptive) {
      double target = 0.0;
      if (i == 0) {
        target = std::floor(static_cast<double>(r.old_window) * p.bootstrap_factor + 0.5);
      } else {
        const ProgressionRecord& q = log[i - 1];
        if (r.old_window != q.old_window) {
          expected_grad = (r.window_latency - q.window_latency) / static_cast<double>(r.old_window - q.old_window);
        }
        target = std::floor(static_cast<double>(r.old_window) - p.alpha * expected_grad + 0.5);
      }
      const double cap = static_cast<double>(p.growth_cap) * static_cast<double>(r.old_window);
      if (target > cap) target = cap;
      if (target < static_cast<double>(p.window_min)) target = static_cast<double>(p.window_min);
      expected = static_cast<Cycle>(target);
    }
    if (r.gradient != expected_grad) {
      return fail(i, "gradient " + std::to_string(r.gradient) + " but replay gives " + std::to_string(expected_grad));
    }
    if (r.new_window != expected) {
      return fail(i, "window " + std::to_string(r.new_window) + " but replay gives " + std::to_string(expected));
    }
  }
  return {};
}

CheckResult window_bounds_check(std::span<const ProgressionRecord> log, Cycle window_min, std::uint32_t growth_cap) {
  CheckResult res;
  for (const ProgressionRecord& r : log) {
    ++res.cases;
    if (r.new_window < window_min || r.new_window > static_cast<Cycle>(growth_cap) * r.old_window) {
      res.ok = false;
      res.failure = "step " + std::to_string(r.step) + ": window " + std::to_string(r.old_window) + " -> " +
                    std::to_string(r.new_window) + " out of bounds";
      return res;
    }
  }
  return res;
}

WindowTrend window_trend(std::span<const ProgressionRecord> log) {
  WindowTrend t;
  if (log.empty()) return t;
  std::vector<Cycle> w{log.front().old_window};
  for (const ProgressionRecord& r : log) w.push_back(r.new_window);
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] > w[t.peak_step]) t.peak_step = i;
  }
  t.peak_window = w[t.peak_step];
  t.first_window = w.front();
  t.last_window = w.back();
  t.monotone_rise = true;
  for (std::size_t i = 0; i < t.peak_step; ++i) {
    if (w[i + 1] > w[i]) ++t.rising_steps;
    if (w[i + 1] < w[i]) t.monotone_rise = false;
  }
  for (std::size_t i = t.peak_step; i + 1 < w.size(); ++i) {
    if (w[i + 1] < w[i]) ++t.falling_steps;
  }
  t.rolls_off = t.last_window < t.peak_window;
  return t;
}

}  // namespace xnoc::validation
