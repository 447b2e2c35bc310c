// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/router.hpp"

#include <string>

#include "xnoc/errors.hpp"

namespace xnoc {

void RouterConfig::validate() const {
  auto in_range = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in_range(num_vcs, 1, 32)) throw ConfigError("router.num_vcs must be in [1, 32]");
  if (!in_range(vc_depth, 1, 1024)) throw ConfigError("router.vc_depth must be in [1, 1024]");
  if (!in_range(router_delay, 1, 64)) throw ConfigError("router.router_delay must be in [1, 64]");
  if (!in_range(link_delay_electrical, 1, 64)) {
    throw ConfigError("router.link_delay_electrical must be in [1, 64]");
  }
  if (!in_range(link_delay_optical, 1, 64)) throw ConfigError("router.link_delay_optical must be in [1, 64]");
  if (!in_range(local_delay, 1, 64)) throw ConfigError("router.local_delay must be in [1, 64]");
  if (!in_range(credit_delay, 1, 64)) throw ConfigError("router.credit_delay must be in [1, 64]");
}

Router::Router(NodeId id, const RouterConfig& cfg, bool hybrid) : id_(id), cfg_(cfg), hybrid_(hybrid) {
  const auto channels = static_cast<std::size_t>(port_count() * cfg_.num_vcs);
  inputs_.resize(channels);
  for (auto& in : inputs_) in.slots.resize(static_cast<std::size_t>(cfg_.vc_depth));
  outputs_.resize(channels);
  for (auto& out : outputs_) out.credits = cfg_.vc_depth;
  rr_next_.assign(static_cast<std::size_t>(port_count()), 0);
  injection_vcs_.resize(static_cast<std::size_t>(cfg_.num_vcs));
  for (auto& vc : injection_vcs_) vc.credits = cfg_.vc_depth;
  request_port_.assign(channels, -1);
  request_vc_.assign(channels, -1);
}

int Router::free_output_vc(int port) const {
  for (int v = 0; v < cfg_.num_vcs; ++v) {
    const OutputVc& o = output(port, v);
    if (!o.allocated && o.credits > 0) return v;
  }
  return -1;
}

int Router::free_injection_vc() const {
  for (int v = 0; v < cfg_.num_vcs; ++v) {
    const OutputVc& o = injection_vcs_[static_cast<std::size_t>(v)];
    if (!o.allocated && o.credits > 0) return v;
  }
  return -1;
}

InjectResult Router::try_inject(const Packet& packet, Cycle now, std::vector<InjectedFlit>& sent) {
  if (packet.src != id_) throw InvariantError("packet injected at the wrong router");
  if (!injection_paused_ && queue_.empty() && !current_ && last_injection_send_ != now) {
    const int vc = free_injection_vc();
    if (vc >= 0) {
      current_ = Injection{packet, vc, 0};
      injection_vcs_[static_cast<std::size_t>(vc)].allocated = true;
      send_injection_flit(now, sent);
      return InjectResult::Accepted;
    }
  }
  queue_.push_back(packet);
  return InjectResult::Deferred;
}

void Router::inject_tick(Cycle now, std::vector<InjectedFlit>& sent) {
  if (last_injection_send_ == now) return;
  if (!current_) {
    if (injection_paused_ || queue_.empty()) return;
    const int vc = free_injection_vc();
    if (vc < 0) return;
    current_ = Injection{queue_.front(), vc, 0};
    queue_.pop_front();
    injection_vcs_[static_cast<std::size_t>(vc)].allocated = true;
  }
  send_injection_flit(now, sent);
}

void Router::send_injection_flit(Cycle now, std::vector<InjectedFlit>& sent) {
  Injection& inj = *current_;
  OutputVc& vc = injection_vcs_[static_cast<std::size_t>(inj.vc)];
  if (vc.credits == 0) return;
  --vc.credits;
  const Flit flit{inj.packet.id, inj.packet.dst, static_cast<std::uint16_t>(inj.next_seq),
                  flit_kind(inj.next_seq, inj.packet.size_flits)};
  sent.push_back({inj.vc, flit});
  last_injection_send_ = now;
  ++inj.next_seq;
  if (is_tail(flit.kind)) {
    vc.allocated = false;
    current_.reset();
  }
}

void Router::accept_flit(Port in, int vc, const Flit& flit, Cycle now) {
  InputVc& b = input(port_index(in), vc);
  if (b.size == cfg_.vc_depth) {
    throw InvariantError("buffer overflow at router " + std::to_string(id_.index) + " port " +
                         std::string(to_string(in)) + " vc " + std::to_string(vc));
  }
  b.slots[static_cast<std::size_t>((b.head + b.size) % cfg_.vc_depth)] = {flit, now};
  ++b.size;
  ++buffered_;
}

void Router::accept_credit(Port out, int vc) {
  OutputVc& o = output(port_index(out), vc);
  if (o.credits >= cfg_.vc_depth) {
    throw InvariantError("credit overflow at router " + std::to_string(id_.index) + " port " +
                         std::string(to_string(out)));
  }
  ++o.credits;
}

void Router::accept_injection_credit(int vc) {
  OutputVc& o = injection_vcs_[static_cast<std::size_t>(vc)];
  if (o.credits >= cfg_.vc_depth) {
    throw InvariantError("injection credit overflow at router " + std::to_string(id_.index));
  }
  ++o.credits;
}

void Router::tick(Cycle now, const RouteContext& route, std::vector<Departure>& out) {
  const int ports = port_count();
  const int vcs = cfg_.num_vcs;
  const int channels = ports * vcs;
  unsigned requested = 0;

  for (int i = 0; i < channels; ++i) {
    request_port_[static_cast<std::size_t>(i)] = -1;
    InputVc& in = inputs_[static_cast<std::size_t>(i)];
    if (in.size == 0) continue;
    const BufferedFlit& front = in.slots[static_cast<std::size_t>(in.head)];
    if (front.arrival + cfg_.router_delay > now) continue;

    int op = 0;
    int ov = -1;
    if (!in.routed) {
      if (!is_head(front.flit.kind)) {
        throw InvariantError("body flit at the front of an unrouted VC at router " +
                             std::to_string(id_.index));
      }
      const Port p = front.flit.dst == id_ ? Port::Local
                                           : xy_star_route(id_, front.flit.dst, route.bus, *route.mesh);
      op = port_index(p);
      if (op >= ports) throw InvariantError("route to a port the router does not have");
      if (p != Port::Local) {
        ov = free_output_vc(op);
        if (ov < 0) continue;
      }
    } else {
      op = port_index(in.out_port);
      ov = in.out_vc;
      if (ov >= 0 && output(op, ov).credits == 0) continue;
    }
    request_port_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(op);
    request_vc_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(ov);
    requested |= 1u << op;
  }

  for (int op = 0; op < ports; ++op) {
    if ((requested & (1u << op)) == 0) continue;
    const int start = rr_next_[static_cast<std::size_t>(op)];
    for (int k = 0; k < channels; ++k) {
      const int i = (start + k) % channels;
      if (request_port_[static_cast<std::size_t>(i)] != op) continue;

      InputVc& in = inputs_[static_cast<std::size_t>(i)];
      const Flit flit = in.slots[static_cast<std::size_t>(in.head)].flit;
      in.head = (in.head + 1) % cfg_.vc_depth;
      --in.size;
      --buffered_;

      const int ov = request_vc_[static_cast<std::size_t>(i)];
      if (!in.routed) {
        in.routed = true;
        in.out_port = static_cast<Port>(op);
        in.out_vc = ov;
        if (ov >= 0) output(op, ov).allocated = true;
      }
      if (ov >= 0) --output(op, ov).credits;
      if (is_tail(flit.kind)) {
        in.routed = false;
        if (ov >= 0) output(op, ov).allocated = false;
      }
      out.push_back({static_cast<Port>(i / vcs), i % vcs, static_cast<Port>(op), ov, flit});
      rr_next_[static_cast<std::size_t>(op)] = (i + 1) % channels;
      break;
    }
  }
}

int Router::occupancy(Port in, int vc) const { return input(port_index(in), vc).size; }

int Router::credits(Port out, int vc) const { return output(port_index(out), vc).credits; }

bool Router::output_vc_allocated(Port out, int vc) const { return output(port_index(out), vc).allocated; }

int Router::injection_credits(int vc) const { return injection_vcs_[static_cast<std::size_t>(vc)].credits; }

bool Router::optical_output_drained() const {
  if (!hybrid_) return true;
  for (int v = 0; v < cfg_.num_vcs; ++v) {
    const OutputVc& o = output(port_index(Port::Optical), v);
    if (o.allocated || o.credits != cfg_.vc_depth) return false;
  }
  return true;
}

}  // namespace xnoc
