// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/engine.hpp"

#include <chrono>
#include <deque>
#include <future>
#include <ostream>

#include "xnoc/errors.hpp"
#include "xnoc/network.hpp"

namespace xnoc {

void TextEventLog::on_flit_departure(Cycle now, NodeId router, Port out, const Flit& flit) {
  os_ << "F " << now << ' ' << router.index << ' ' << to_string(out) << ' ' << flit.packet << ' ' << flit.seq
      << '\n';
}

void TextEventLog::on_delivery(Cycle now, const Packet& packet, Cycle latency) {
  os_ << "D " << now << ' ' << packet.id << ' ' << packet.src.index << ' ' << packet.dst.index << ' ' << latency
      << '\n';
}

namespace {

// Routes network callbacks into the open interval, the run totals, and the
// user's sink.
class Recorder : public NetworkObserver {
 public:
  Recorder(std::size_t nodes, EventSink* sink) : sink_(sink), run_(0, IntervalPhase::Window, 0, nodes) {}

  void open(std::size_t index, IntervalPhase phase, Cycle start, const Network& net) {
    const auto nodes = static_cast<std::size_t>(net.mesh().node_count());
    current_ = WindowAccumulator(index, phase, start, nodes);
    for (std::uint32_t i = 0; i < nodes; ++i) {
      current_.note_queue_depth(i, net.router(NodeId{i}).injection_queue_depth());
    }
    open_ = true;
  }

  bool is_open() const { return open_; }
  IntervalPhase phase() const { return current_.current().phase; }
  Cycle start() const { return current_.current().start_cycle; }

  WindowMetrics close(Cycle end) {
    open_ = false;
    return current_.close(end);
  }

  WindowMetrics totals(Cycle end) { return run_.close(end); }

  void on_departure(Cycle now, NodeId router, Port out, const Flit& flit) override {
    if (sink_) sink_->on_flit_departure(now, router, out, flit);
  }

  void on_delivery(Cycle now, const Packet& p) override {
    const Cycle latency = packet_latency(p, now);
    current_.add_delivery(latency, p.size_flits);
    run_.add_delivery(latency, p.size_flits);
    if (sink_) sink_->on_delivery(now, p, latency);
  }

  void on_energy(const EnergyEvent& e) override {
    current_.add_energy(e.joules);
    run_.add_energy(e.joules);
    if (sink_) sink_->on_energy(e);
  }

  void on_bus_flit(Cycle, const Flit&) override {
    current_.add_bus_flit();
    run_.add_bus_flit();
  }

  void on_injection_queue(NodeId n, std::size_t depth) override {
    current_.note_queue_depth(n.index, depth);
    run_.note_queue_depth(n.index, depth);
  }

 private:
  EventSink* sink_;
  WindowAccumulator current_;
  WindowAccumulator run_;
  bool open_ = false;
};

struct LocalDelivery {
  Cycle at;
  Packet packet;
};

}  // namespace

RunReport run(const SimConfig& config, EventSink* sink) {
  const auto wall_start = std::chrono::steady_clock::now();
  config.validate();
  const MaterializedTraffic traffic = materialize_traffic(config);

  RunReport report;
  report.config = config;
  report.traffic_horizon = traffic.horizon;

  const auto nodes = static_cast<std::size_t>(config.mesh.node_count());
  const bool reconfigurable = config.mode != Mode::Baseline;
  const ControllerParams& cp = config.controller;
  Recorder rec(nodes, sink);
  Network net(config.mesh, config.router, reconfigurable, config.energy, &rec);
  WindowController ctrl(cp, config.mode == Mode::Adaptive);

  std::vector<TrafficStats> stats(nodes);
  for (std::uint32_t i = 0; i < nodes; ++i) stats[i].node = NodeId{i};
  std::deque<LocalDelivery> local;
  std::optional<BusAllocation> pending;

  const Cycle limit = config.max_cycles > 0 ? config.max_cycles : 2 * traffic.horizon + 100000;
  Cycle now = 0;
  Cycle interval_end = ctrl.current_window();  // end of the current window or reconfiguration period
  bool draining = false;
  std::size_t next_record = 0;

  const auto close_interval = [&](Cycle end) {
    WindowMetrics row = rec.close(end);
    if (row.end_cycle > row.start_cycle || row.delivered_packets > 0) report.windows.push_back(std::move(row));
    return report.windows.empty() ? WindowMetrics{} : report.windows.back();
  };

  rec.open(0, IntervalPhase::Window, 0, net);
  while (true) {
    if (now >= limit) {
      report.partial = true;
      break;
    }
    if (!draining && now == traffic.horizon) {
      close_interval(now);
      pending.reset();
      net.set_injection_paused(false);
      if (!config.drain) break;
      draining = true;
      rec.open(report.windows.size(), IntervalPhase::Drain, now, net);
    }
    if (draining && local.empty() && net.idle()) break;

    if (!draining && now == interval_end) {
      if (!reconfigurable) {
        close_interval(now);
        rec.open(report.windows.size(), IntervalPhase::Window, now, net);
        interval_end = now + cp.initial_window;
      } else if (rec.phase() == IntervalPhase::Window) {
        const WindowMetrics row = close_interval(now);
        const double cost = cp.latency_cost == LatencyCost::Total
                                ? static_cast<double>(row.total_latency_cycles)
                                : row.mean_latency_cycles();
        std::vector<NodeReport> reports;
        reports.reserve(nodes);
        for (std::uint32_t i = 0; i < nodes; ++i) {
          const auto wire = pack_report(make_report(stats[i]));
          reports.push_back(unpack_report(NodeId{i}, wire));
          stats[i].reset();
        }
        std::optional<BusAllocation> bus = select_bus_owners(reports, config.mesh, cp.min_hops);
        const WindowStep step = ctrl.complete_window(cost);
        ProgressionRecord pr{report.progression.size(), now, step.old_window, step.new_window, step.gradient, bus,
                             cost};
        report.progression.push_back(pr);
        if (sink) sink->on_reconfiguration(pr);

        net.deactivate_bus();
        if (bus) bus->bidirectional = cp.bidirectional;
        pending = bus;
        if (cp.strict_pause) net.set_injection_paused(true);
        rec.open(report.windows.size(), IntervalPhase::Reconfig, now, net);
        interval_end = now + cp.reconfig_period;
      } else {
        close_interval(now);
        net.set_injection_paused(false);
        rec.open(report.windows.size(), IntervalPhase::Window, now, net);
        interval_end = now + ctrl.current_window();
      }
    }
    if (pending && rec.phase() == IntervalPhase::Window && net.optical_drained()) {
      net.activate_bus(*pending);
      ++report.bus_activations;
      pending.reset();
    }

    while (next_record < traffic.records.size() && traffic.records[next_record].cycle == now) {
      const TraceRecord& r = traffic.records[next_record];
      const Packet p{static_cast<std::uint32_t>(next_record), r.src, r.dst,
                     flits_for_bytes(r.size_bytes, config.energy.flit_bits), now};
      ++next_record;
      ++report.injected_packets;
      if (p.src == p.dst) {
        local.push_back({now + 2 * config.router.local_delay, p});
        continue;
      }
      stats[p.src.index].record_flits(p.dst, p.size_flits);
      net.offer(p);
    }
    while (!local.empty() && local.front().at == now) {
      rec.on_delivery(now, local.front().packet);
      local.pop_front();
    }

    net.step(now);
    if (config.check_invariants) net.check_invariants();
    ++now;
  }

  if (rec.is_open()) close_interval(now);
  report.end_cycle = now;
  report.totals = rec.totals(now);
  report.undelivered_packets = report.injected_packets - report.totals.delivered_packets;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

Comparison compare(const std::vector<SimConfig>& configs, bool parallel) {
  if (configs.empty()) throw HarnessError("nothing to compare");
  std::size_t baselines = 0;
  Comparison out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].mode == Mode::Baseline) {
      ++baselines;
      out.baseline_index = i;
    }
  }
  if (baselines != 1) throw HarnessError("comparison needs exactly one baseline run, got " + std::to_string(baselines));
  const SimConfig& ref = configs[out.baseline_index];
  for (const SimConfig& c : configs) {
    if (!(c.mesh == ref.mesh)) throw HarnessError("compared runs use different meshes");
    if (!(c.traffic == ref.traffic) || c.seed != ref.seed) throw HarnessError("compared runs use different traffic");
  }

  if (parallel && configs.size() > 1) {
    std::vector<std::future<RunReport>> jobs;
    jobs.reserve(configs.size());
    for (const SimConfig& c : configs) jobs.push_back(std::async(std::launch::async, [&c] { return run(c); }));
    for (auto& j : jobs) out.reports.push_back(j.get());
  } else {
    for (const SimConfig& c : configs) out.reports.push_back(run(c));
  }

  const WindowMetrics& base = out.reports[out.baseline_index].totals;
  std::vector<int> seen(3, 0);
  for (const RunReport& r : out.reports) {
    ComparisonRow row;
    row.mode = r.config.mode;
    row.label = std::string(to_string(row.mode));
    if (seen[static_cast<std::size_t>(row.mode)]++ > 0) {
      row.label += "-" + std::to_string(seen[static_cast<std::size_t>(row.mode)]);
    }
    row.delivered_packets = r.totals.delivered_packets;
    row.mean_latency_cycles = r.totals.mean_latency_cycles();
    row.dynamic_energy_joules = r.totals.dynamic_energy_joules;
    row.latency_ratio = normalized(row.mean_latency_cycles, base.mean_latency_cycles());
    row.energy_ratio = normalized(row.dynamic_energy_joules, base.dynamic_energy_joules);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace xnoc
