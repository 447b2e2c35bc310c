// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xnoc/metrics.hpp"
#include "xnoc/packet.hpp"
#include "xnoc/router.hpp"
#include "xnoc/routing.hpp"
#include "xnoc/topology.hpp"

namespace xnoc {

/// Callbacks fired by Network::step, in simulation order.
class NetworkObserver {
 public:
  virtual ~NetworkObserver() = default;
  virtual void on_departure(Cycle, NodeId /*router*/, Port /*out*/, const Flit&) {}
  virtual void on_delivery(Cycle, const Packet&) {}
  virtual void on_energy(const EnergyEvent&) {}
  virtual void on_bus_flit(Cycle, const Flit&) {}
  virtual void on_injection_queue(NodeId, std::size_t /*depth*/) {}
};

/// Routers, links, and the optical bus of one mesh. Each step() runs one
/// cycle in a fixed order:
///   1. link arrivals due this cycle: flits reaching cores (ejection),
///      flits reaching router buffers, credits reaching upstream ports;
///   2. router ticks in node order (route, allocate, traverse);
///   3. injection: packets offered this cycle, then ongoing injections.
class Network {
 public:
  Network(const MeshSpec& mesh, const RouterConfig& router, bool hybrid,
          const EnergyModel& energy, NetworkObserver* observer = nullptr);

  const MeshSpec& mesh() const { return mesh_; }
  const RouterConfig& router_config() const { return cfg_; }
  bool hybrid() const { return hybrid_; }

  const BusAllocation& bus() const { return bus_; }

  /// Connects and activates a bus. Requires optical_drained(); a hybrid
  /// network is required for an active bus.
  void activate_bus(const BusAllocation& bus);

  /// Stops new packets from being routed onto the bus. Packets already
  /// holding an optical VC finish their traversal.
  void deactivate_bus();

  /// No optical VC is held and all optical credits are home.
  bool optical_drained() const;

  void set_injection_paused(bool paused);

  /// Registers a packet for injection in the next step(). Ids must be dense
  /// and increasing from 0. src != dst.
  void offer(const Packet& packet);

  void step(Cycle now);

  /// Nothing queued, buffered, or in flight.
  bool idle() const;

  const Router& router(NodeId n) const { return routers_[n.index]; }
  const Packet& packet(std::uint32_t id) const { return packets_[id]; }
  std::size_t packet_count() const { return packets_.size(); }
  std::uint64_t delivered_packets() const { return delivered_; }
  std::uint64_t deferred_injections() const { return deferred_; }

  /// Credit conservation on every channel. Throws InvariantError.
  void check_invariants() const;

 private:
  enum class EventKind : std::uint8_t { FlitToRouter, FlitToCore, CreditToRouter, CreditToCore };

  struct LinkEvent {
    EventKind kind;
    std::uint8_t port;
    std::int8_t vc;
    std::uint32_t node;
    Flit flit;
  };

  void schedule(Cycle at, const LinkEvent& ev);
  void dispatch(Cycle now, NodeId at, const Departure& d);
  void deliver_to_core(Cycle now, const LinkEvent& ev);
  std::int64_t neighbor(NodeId n, Port p) const {
    return neighbors_[n.index * 4 + static_cast<std::uint32_t>(port_index(p))];
  }

  MeshSpec mesh_;
  RouterConfig cfg_;
  bool hybrid_;
  EnergyModel energy_;
  NetworkObserver* observer_;

  std::vector<Router> routers_;
  std::vector<std::int64_t> neighbors_;  // [node * 4 + dir], -1 at the edge
  std::vector<std::vector<LinkEvent>> wheel_;
  std::size_t in_flight_flits_ = 0;

  BusAllocation bus_;
  std::vector<std::int64_t> optical_target_;    // per source router
  std::vector<std::int64_t> optical_upstream_;  // per destination router
  std::vector<double> optical_energy_;          // per source router, J per flit

  std::vector<Packet> packets_;
  std::vector<std::uint32_t> received_;  // flits received at the destination core
  std::vector<std::uint32_t> offered_;   // ids waiting for the injection stage
  std::uint64_t delivered_ = 0;
  std::uint64_t deferred_ = 0;

  std::vector<Departure> departures_;
  std::vector<InjectedFlit> injected_;
};

}  // namespace xnoc
