// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "xnoc/packet.hpp"
#include "xnoc/routing.hpp"
#include "xnoc/topology.hpp"

namespace xnoc {

struct RouterConfig {
  int num_vcs = 4;
  int vc_depth = 8;  // flits per VC buffer
  int router_delay = 2;
  int link_delay_electrical = 1;
  int link_delay_optical = 2;
  int local_delay = 1;  // core <-> router, each way
  int credit_delay = 1;

  void validate() const;

  friend bool operator==(const RouterConfig&, const RouterConfig&) = default;
};

enum class InjectResult { Accepted, Deferred };

/// A flit leaving a router in this cycle.
struct Departure {
  Port in_port;
  int in_vc;
  Port out_port;
  int out_vc;  // -1 for ejection
  Flit flit;
};

/// A flit put on the core-to-router link in this cycle.
struct InjectedFlit {
  int vc;
  Flit flit;
};

/// Routing view handed to a router each tick.
struct RouteContext {
  const MeshSpec* mesh = nullptr;
  BusAllocation bus;
};

/// Input-buffered virtual-channel router with credit flow control and a
/// fixed per-hop delay. Also owns the injection side of the attached core:
/// an unbounded packet queue feeding the local input port one flit per cycle.
///
/// Allocation: a head flit that has spent router_delay cycles in its buffer
/// picks the lowest-numbered free output VC with a credit; each output port
/// then grants one requesting input VC per cycle, round-robin starting after
/// the last winner. Output VCs are released when the tail leaves.
class Router {
 public:
  Router(NodeId id, const RouterConfig& cfg, bool hybrid);

  NodeId id() const { return id_; }
  bool hybrid() const { return hybrid_; }
  int port_count() const { return hybrid_ ? kHybridPortCount : kBasePortCount; }

  /// Starts `packet` this cycle if the injection queue is empty and a local
  /// input VC is free; otherwise queues it. A started head is appended to `sent`.
  InjectResult try_inject(const Packet& packet, Cycle now, std::vector<InjectedFlit>& sent);

  /// Continues the packet being injected, or starts the oldest queued one.
  void inject_tick(Cycle now, std::vector<InjectedFlit>& sent);

  void set_injection_paused(bool paused) { injection_paused_ = paused; }
  std::size_t injection_queue_depth() const { return queue_.size(); }
  bool injection_idle() const { return queue_.empty() && !current_.has_value(); }

  void accept_flit(Port in, int vc, const Flit& flit, Cycle now);
  void accept_credit(Port out, int vc);
  void accept_injection_credit(int vc);

  /// Switch allocation and traversal for one cycle. Departures are appended.
  void tick(Cycle now, const RouteContext& route, std::vector<Departure>& out);

  int buffered_flits() const { return buffered_; }
  int occupancy(Port in, int vc) const;
  int credits(Port out, int vc) const;
  bool output_vc_allocated(Port out, int vc) const;
  int injection_credits(int vc) const;

  /// True when every optical output VC is released with all credits home.
  bool optical_output_drained() const;

 private:
  struct BufferedFlit {
    Flit flit;
    Cycle arrival = 0;
  };

  struct InputVc {
    std::vector<BufferedFlit> slots;  // ring of vc_depth
    int head = 0;
    int size = 0;
    bool routed = false;
    Port out_port = Port::Local;
    int out_vc = -1;
  };

  struct OutputVc {
    bool allocated = false;
    int credits = 0;
  };

  struct Injection {
    Packet packet;
    int vc = 0;
    std::uint32_t next_seq = 0;
  };

  InputVc& input(int port, int vc) { return inputs_[static_cast<std::size_t>(port * cfg_.num_vcs + vc)]; }
  const InputVc& input(int port, int vc) const {
    return inputs_[static_cast<std::size_t>(port * cfg_.num_vcs + vc)];
  }
  OutputVc& output(int port, int vc) { return outputs_[static_cast<std::size_t>(port * cfg_.num_vcs + vc)]; }
  const OutputVc& output(int port, int vc) const {
    return outputs_[static_cast<std::size_t>(port * cfg_.num_vcs + vc)];
  }

  int free_output_vc(int port) const;
  int free_injection_vc() const;
  void send_injection_flit(Cycle now, std::vector<InjectedFlit>& sent);

  NodeId id_;
  RouterConfig cfg_;
  bool hybrid_;
  std::vector<InputVc> inputs_;
  std::vector<OutputVc> outputs_;
  std::vector<int> rr_next_;  // per output port
  int buffered_ = 0;

  std::vector<OutputVc> injection_vcs_;  // core's view of the local input VCs
  std::deque<Packet> queue_;
  std::optional<Injection> current_;
  Cycle last_injection_send_ = -1;
  bool injection_paused_ = false;

  // Scratch for tick(); kept to avoid per-cycle allocation.
  std::vector<std::int8_t> request_port_;
  std::vector<std::int8_t> request_vc_;
};

}  // namespace xnoc
