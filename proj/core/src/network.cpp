// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/network.hpp"

#include <algorithm>
#include <string>

#include "xnoc/errors.hpp"

namespace xnoc {

namespace {

std::size_t wheel_size_for(const RouterConfig& cfg) {
  const int longest = std::max({cfg.link_delay_electrical, cfg.link_delay_optical, cfg.local_delay,
                                cfg.credit_delay});
  std::size_t size = 1;
  while (size <= static_cast<std::size_t>(longest)) size <<= 1;
  return size;
}

}  // namespace

Network::Network(const MeshSpec& mesh, const RouterConfig& router, bool hybrid,
                 const EnergyModel& energy, NetworkObserver* observer)
    : mesh_(mesh), cfg_(router), hybrid_(hybrid), energy_(energy), observer_(observer) {
  mesh_.validate();
  cfg_.validate();
  const auto n = static_cast<std::size_t>(mesh_.node_count());
  routers_.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) routers_.emplace_back(NodeId{i}, cfg_, hybrid_);

  neighbors_.assign(n * 4, -1);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (const Neighbor& nb : mesh_neighbors(NodeId{i}, mesh_)) {
      neighbors_[i * 4 + static_cast<std::uint32_t>(port_index(nb.port))] = nb.node.index;
    }
  }
  wheel_.resize(wheel_size_for(cfg_));
  optical_target_.assign(n, -1);
  optical_upstream_.assign(n, -1);
  optical_energy_.assign(n, 0.0);
}

void Network::activate_bus(const BusAllocation& bus) {
  if (!bus.active) {
    deactivate_bus();
    return;
  }
  if (!hybrid_) throw InvariantError("cannot attach an optical bus to 5-port routers");
  if (!mesh_.contains(bus.src) || !mesh_.contains(bus.dst) || bus.src == bus.dst) {
    throw InvariantError("invalid bus endpoints");
  }
  if (!optical_drained()) throw InvariantError("bus re-targeted while optical traffic is in flight");

  std::fill(optical_target_.begin(), optical_target_.end(), -1);
  std::fill(optical_upstream_.begin(), optical_upstream_.end(), -1);
  const double per_flit = optical_flit_energy(bus_span_mm(bus.src, bus.dst, mesh_), energy_);
  optical_target_[bus.src.index] = bus.dst.index;
  optical_upstream_[bus.dst.index] = bus.src.index;
  optical_energy_[bus.src.index] = per_flit;
  if (bus.bidirectional) {
    optical_target_[bus.dst.index] = bus.src.index;
    optical_upstream_[bus.src.index] = bus.dst.index;
    optical_energy_[bus.dst.index] = per_flit;
  }
  bus_ = bus;
}

void Network::deactivate_bus() { bus_.active = false; }

bool Network::optical_drained() const {
  if (!hybrid_) return true;
  for (std::size_t i = 0; i < optical_target_.size(); ++i) {
    if (optical_target_[i] >= 0 && !routers_[i].optical_output_drained()) return false;
  }
  return true;
}

void Network::set_injection_paused(bool paused) {
  for (Router& r : routers_) r.set_injection_paused(paused);
}

void Network::offer(const Packet& packet) {
  if (packet.src == packet.dst) throw InvariantError("same-node packets never enter the network");
  if (!mesh_.contains(packet.src) || !mesh_.contains(packet.dst)) throw InvariantError("packet endpoint off mesh");
  if (packet.size_flits == 0 || packet.size_flits > 0xFFFF) throw InvariantError("packet size out of range");
  if (packet.id < packets_.size()) throw InvariantError("packet ids must increase");
  packets_.resize(packet.id + 1);
  received_.resize(packet.id + 1, 0);
  packets_[packet.id] = packet;
  offered_.push_back(packet.id);
}

void Network::schedule(Cycle at, const LinkEvent& ev) {
  wheel_[static_cast<std::size_t>(at) & (wheel_.size() - 1)].push_back(ev);
  if (ev.kind == EventKind::FlitToRouter || ev.kind == EventKind::FlitToCore) ++in_flight_flits_;
}

void Network::step(Cycle now) {
  auto& slot = wheel_[static_cast<std::size_t>(now) & (wheel_.size() - 1)];
  for (std::size_t i = 0; i < slot.size(); ++i) {
    const LinkEvent& ev = slot[i];
    switch (ev.kind) {
      case EventKind::FlitToCore:
        --in_flight_flits_;
        deliver_to_core(now, ev);
        break;
      case EventKind::FlitToRouter:
        --in_flight_flits_;
        routers_[ev.node].accept_flit(static_cast<Port>(ev.port), ev.vc, ev.flit, now);
        break;
      case EventKind::CreditToRouter:
        routers_[ev.node].accept_credit(static_cast<Port>(ev.port), ev.vc);
        break;
      case EventKind::CreditToCore:
        routers_[ev.node].accept_injection_credit(ev.vc);
        break;
    }
  }
  slot.clear();

  const RouteContext ctx{&mesh_, bus_};
  for (Router& r : routers_) {
    if (r.buffered_flits() == 0) continue;
    departures_.clear();
    r.tick(now, ctx, departures_);
    for (const Departure& d : departures_) dispatch(now, r.id(), d);
  }

  const auto schedule_injected = [&](NodeId at) {
    for (const InjectedFlit& f : injected_) {
      schedule(now + cfg_.local_delay,
               {EventKind::FlitToRouter, static_cast<std::uint8_t>(port_index(Port::Local)),
                static_cast<std::int8_t>(f.vc), at.index, f.flit});
    }
  };
  for (const std::uint32_t id : offered_) {
    const Packet& p = packets_[id];
    Router& r = routers_[p.src.index];
    injected_.clear();
    if (r.try_inject(p, now, injected_) == InjectResult::Deferred) {
      ++deferred_;
      if (observer_) observer_->on_injection_queue(p.src, r.injection_queue_depth());
    }
    schedule_injected(p.src);
  }
  offered_.clear();
  for (Router& r : routers_) {
    if (r.injection_idle()) continue;
    injected_.clear();
    r.inject_tick(now, injected_);
    schedule_injected(r.id());
  }
}

void Network::dispatch(Cycle now, NodeId at, const Departure& d) {
  if (observer_) {
    observer_->on_departure(now, at, d.out_port, d.flit);
    observer_->on_energy({now, d.flit.packet, d.flit.seq, EnergyKind::Router, 0.0, energy_.e_router});
  }

  const Cycle credit_at = now + cfg_.credit_delay;
  const auto vc8 = static_cast<std::int8_t>(d.in_vc);
  switch (d.in_port) {
    case Port::Local:
      schedule(credit_at, {EventKind::CreditToCore, 0, vc8, at.index, {}});
      break;
    case Port::Optical: {
      const std::int64_t up = optical_upstream_[at.index];
      if (up < 0) throw InvariantError("optical flit without an upstream router");
      schedule(credit_at, {EventKind::CreditToRouter, static_cast<std::uint8_t>(port_index(Port::Optical)), vc8,
                           static_cast<std::uint32_t>(up), {}});
      break;
    }
    case Port::Reconfig:
      throw InvariantError("data flit on the reconfiguration port");
    default: {
      const std::int64_t up = neighbor(at, d.in_port);
      if (up < 0) throw InvariantError("flit arrived from beyond the mesh edge");
      schedule(credit_at, {EventKind::CreditToRouter, static_cast<std::uint8_t>(port_index(opposite(d.in_port))),
                           vc8, static_cast<std::uint32_t>(up), {}});
      break;
    }
  }

  const auto out_vc8 = static_cast<std::int8_t>(d.out_vc);
  switch (d.out_port) {
    case Port::Local:
      schedule(now + cfg_.local_delay, {EventKind::FlitToCore, 0, -1, at.index, d.flit});
      break;
    case Port::Optical: {
      const std::int64_t target = optical_target_[at.index];
      if (target < 0) throw InvariantError("optical departure with no bus target");
      schedule(now + cfg_.link_delay_optical,
               {EventKind::FlitToRouter, static_cast<std::uint8_t>(port_index(Port::Optical)), out_vc8,
                static_cast<std::uint32_t>(target), d.flit});
      if (observer_) {
        observer_->on_bus_flit(now, d.flit);
        observer_->on_energy({now, d.flit.packet, d.flit.seq, EnergyKind::OpticalLink,
                              bus_span_mm(at, NodeId{static_cast<std::uint32_t>(target)}, mesh_),
                              optical_energy_[at.index]});
      }
      break;
    }
    case Port::Reconfig:
      throw InvariantError("data flit routed to the reconfiguration port");
    default: {
      const std::int64_t next = neighbor(at, d.out_port);
      if (next < 0) throw InvariantError("flit routed off the mesh edge");
      schedule(now + cfg_.link_delay_electrical,
               {EventKind::FlitToRouter, static_cast<std::uint8_t>(port_index(opposite(d.out_port))), out_vc8,
                static_cast<std::uint32_t>(next), d.flit});
      if (observer_) {
        observer_->on_energy({now, d.flit.packet, d.flit.seq, EnergyKind::ElectricalLink, mesh_.spacing_mm,
                              mesh_.spacing_mm * energy_.e_link_per_mm});
      }
      break;
    }
  }
}

void Network::deliver_to_core(Cycle now, const LinkEvent& ev) {
  const Packet& p = packets_[ev.flit.packet];
  if (p.dst.index != ev.node) throw InvariantError("flit ejected at the wrong node");
  std::uint32_t& got = received_[ev.flit.packet];
  if (ev.flit.seq != got) {
    throw InvariantError("flit " + std::to_string(ev.flit.seq) + " of packet " + std::to_string(p.id) +
                         " arrived out of order");
  }
  ++got;
  if (is_tail(ev.flit.kind)) {
    if (got != p.size_flits) throw InvariantError("tail arrived before the whole packet");
    ++delivered_;
    if (observer_) observer_->on_delivery(now, p);
  }
}

bool Network::idle() const {
  if (in_flight_flits_ != 0 || !offered_.empty()) return false;
  for (const Router& r : routers_) {
    if (r.buffered_flits() != 0 || !r.injection_idle()) return false;
  }
  return true;
}

void Network::check_invariants() const {
  const int vcs = cfg_.num_vcs;
  const auto n = routers_.size();
  const auto key = [&](std::size_t node, int port, int vc) {
    return (node * kMaxPorts + static_cast<std::size_t>(port)) * static_cast<std::size_t>(vcs) +
           static_cast<std::size_t>(vc);
  };
  std::vector<int> flits_to(n * kMaxPorts * static_cast<std::size_t>(vcs), 0);
  std::vector<int> credits_to(flits_to.size(), 0);
  std::vector<int> core_credits_to(n * static_cast<std::size_t>(vcs), 0);
  for (const auto& slot : wheel_) {
    for (const LinkEvent& ev : slot) {
      switch (ev.kind) {
        case EventKind::FlitToRouter: ++flits_to[key(ev.node, ev.port, ev.vc)]; break;
        case EventKind::CreditToRouter: ++credits_to[key(ev.node, ev.port, ev.vc)]; break;
        case EventKind::CreditToCore:
          ++core_credits_to[ev.node * static_cast<std::size_t>(vcs) + static_cast<std::size_t>(ev.vc)];
          break;
        case EventKind::FlitToCore: break;
      }
    }
  }

  const auto fail = [](std::size_t node, Port port, int vc, int sum, int depth) {
    throw InvariantError("credit conservation broken at router " + std::to_string(node) + " port " +
                         std::string(to_string(port)) + " vc " + std::to_string(vc) + ": " +
                         std::to_string(sum) + " != " + std::to_string(depth));
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Router& r = routers_[i];
    const NodeId id{static_cast<std::uint32_t>(i)};
    for (int v = 0; v < vcs; ++v) {
      const int local = r.injection_credits(v) + core_credits_to[i * static_cast<std::size_t>(vcs) + static_cast<std::size_t>(v)] +
                        r.occupancy(Port::Local, v) + flits_to[key(i, port_index(Port::Local), v)];
      if (local != cfg_.vc_depth) fail(i, Port::Local, v, local, cfg_.vc_depth);
    }
    for (int p = 0; p < 4; ++p) {
      const Port port = static_cast<Port>(p);
      const std::int64_t next = neighbor(id, port);
      for (int v = 0; v < vcs; ++v) {
        int sum = r.credits(port, v) + credits_to[key(i, p, v)];
        if (next >= 0) {
          const Port in = opposite(port);
          sum += routers_[static_cast<std::size_t>(next)].occupancy(in, v) +
                 flits_to[key(static_cast<std::size_t>(next), port_index(in), v)];
        }
        if (sum != cfg_.vc_depth) fail(i, port, v, sum, cfg_.vc_depth);
      }
    }
    if (!hybrid_) continue;
    const std::int64_t target = optical_target_[i];
    for (int v = 0; v < vcs; ++v) {
      int sum = r.credits(Port::Optical, v) + credits_to[key(i, port_index(Port::Optical), v)];
      if (target >= 0) {
        sum += routers_[static_cast<std::size_t>(target)].occupancy(Port::Optical, v) +
               flits_to[key(static_cast<std::size_t>(target), port_index(Port::Optical), v)];
      }
      if (sum != cfg_.vc_depth) fail(i, Port::Optical, v, sum, cfg_.vc_depth);
    }
  }
}

}  // namespace xnoc
