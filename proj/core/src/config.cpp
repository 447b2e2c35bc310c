// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "config_json.hpp"
#include "xnoc/errors.hpp"
#include "xnoc/packet.hpp"

namespace xnoc {

using nlohmann::json;

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Baseline: return "baseline";
    case Mode::Static: return "static";
    case Mode::Adaptive: return "adaptive";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  if (name == "baseline") return Mode::Baseline;
  if (name == "static") return Mode::Static;
  if (name == "adaptive") return Mode::Adaptive;
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

namespace {

std::string_view cost_name(LatencyCost c) { return c == LatencyCost::Mean ? "mean" : "total"; }

LatencyCost parse_cost(const std::string& s) {
  if (s == "total") return LatencyCost::Total;
  if (s == "mean") return LatencyCost::Mean;
  throw ConfigError("controller.latency_cost must be 'total' or 'mean'");
}

std::string_view placement_name(FewPlacement p) { return p == FewPlacement::Random ? "random" : "center"; }

FewPlacement parse_placement(const std::string& s) {
  if (s == "center") return FewPlacement::Center;
  if (s == "random") return FewPlacement::Random;
  throw ConfigError("mfm.placement must be 'center' or 'random'");
}

void check_records(std::span<const TraceRecord> records, const MeshSpec& mesh, std::uint32_t flit_bits,
                   std::optional<Cycle> duration) {
  Cycle last = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const TraceRecord& r = records[i];
    const std::string where = "record " + std::to_string(i) + ": ";
    if (r.cycle < 0 || r.cycle < last) throw TraceValidationError(where + "cycles must be non-decreasing and >= 0");
    if (!mesh.contains(r.src) || !mesh.contains(r.dst)) throw TraceValidationError(where + "node outside the mesh");
    if (r.size_bytes < 1) throw TraceValidationError(where + "size_bytes must be >= 1");
    if (flits_for_bytes(r.size_bytes, flit_bits) > 0xFFFF) {
      throw TraceValidationError(where + "packet exceeds 65535 flits");
    }
    if (duration && r.cycle >= *duration) throw TraceValidationError(where + "cycle beyond traffic duration");
    last = r.cycle;
  }
}

// Reads one JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + "must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  template <typename T>
  void read(const char* key, T& out) {
    const json* v = child(key);
    if (v == nullptr) return;
    const std::string name = path_.empty() ? key : path_ + "." + key;
    if constexpr (std::is_same_v<T, bool>) {
      if (!v->is_boolean()) throw ConfigError(name + " must be a boolean");
      out = v->get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_integer()) throw ConfigError(name + " must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v->is_number_unsigned()) {
          const auto u = v->get<std::uint64_t>();
          if (u > std::numeric_limits<T>::max()) throw ConfigError(name + " out of range");
          out = static_cast<T>(u);
        } else {
          throw ConfigError(name + " must be >= 0");
        }
      } else {
        if (v->is_number_unsigned() && v->get<std::uint64_t>() > static_cast<std::uint64_t>(
                                                                   std::numeric_limits<T>::max())) {
          throw ConfigError(name + " out of range");
        }
        const auto s = v->get<std::int64_t>();
        if (s < std::numeric_limits<T>::min() || s > std::numeric_limits<T>::max()) {
          throw ConfigError(name + " out of range");
        }
        out = static_cast<T>(s);
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v->is_number()) throw ConfigError(name + " must be a number");
      out = v->get<double>();
    } else {
      if (!v->is_string()) throw ConfigError(name + " must be a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config key '" + where_key(key) + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config " : path_ + " "; }
  std::string where_key(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

NodeId read_node(const json& j, const std::string& name) {
  if (!j.is_number_unsigned()) throw ConfigError(name + " must be a node index");
  return NodeId{j.get<std::uint32_t>()};
}

std::vector<TraceRecord> read_records(const json& j) {
  if (!j.is_array()) throw ConfigError("traffic.records must be an array");
  std::vector<TraceRecord> out;
  for (const json& row : j) {
    if (!row.is_array() || row.size() != 4) {
      throw ConfigError("traffic.records entries must be [cycle, src, dst, size_bytes]");
    }
    for (const json& f : row) {
      if (!f.is_number_integer()) throw ConfigError("traffic.records fields must be integers");
    }
    if (row[1].get<std::int64_t>() < 0 || row[2].get<std::int64_t>() < 0 || row[3].get<std::int64_t>() < 0) {
      throw ConfigError("traffic.records fields must be >= 0");
    }
    out.push_back({row[0].get<Cycle>(), NodeId{row[1].get<std::uint32_t>()}, NodeId{row[2].get<std::uint32_t>()},
                   row[3].get<std::uint32_t>()});
  }
  return out;
}

TrafficSource read_traffic(const json& j, const std::filesystem::path& base_dir) {
  ObjectReader r(j, "traffic");
  std::string kind;
  r.read("kind", kind);
  if (kind == "synthetic") {
    SyntheticSpec s;
    std::string pattern = std::string(to_string(s.pattern));
    r.read("pattern", pattern);
    s.pattern = parse_pattern(pattern);
    r.read("duration", s.duration);
    r.read("injection_rate", s.injection_rate);
    r.read("packet_bytes", s.packet_bytes);
    if (const json* f = r.child("fcp")) {
      ObjectReader fr(*f, "traffic.fcp");
      if (const json* pairs = fr.child("hot_pairs")) {
        if (!pairs->is_array()) throw ConfigError("fcp.hot_pairs must be an array");
        for (const json& p : *pairs) {
          if (!p.is_array() || p.size() != 2) throw ConfigError("fcp.hot_pairs entries must be [a, b]");
          s.fcp.hot_pairs.emplace_back(read_node(p[0], "fcp.hot_pairs"), read_node(p[1], "fcp.hot_pairs"));
        }
      }
      fr.read("hot_share", s.fcp.hot_share);
      fr.finish();
    }
    if (const json* m = r.child("mfm")) {
      ObjectReader mr(*m, "traffic.mfm");
      mr.read("few_count", s.mfm.few_count);
      std::string placement = std::string(placement_name(s.mfm.placement));
      mr.read("placement", placement);
      s.mfm.placement = parse_placement(placement);
      mr.read("many_to_few_cycles", s.mfm.many_to_few_cycles);
      mr.read("few_to_many_cycles", s.mfm.few_to_many_cycles);
      mr.finish();
    }
    r.finish();
    return s;
  }
  if (kind == "trace") {
    TraceFile t;
    r.read("path", t.path);
    if (t.path.empty()) throw ConfigError("traffic.path is required for trace traffic");
    std::filesystem::path p(t.path);
    if (p.is_relative() && !base_dir.empty()) t.path = (base_dir / p).lexically_normal().string();
    if (r.has("duration")) {
      Cycle d = 0;
      r.read("duration", d);
      t.duration = d;
    }
    r.finish();
    return t;
  }
  if (kind == "inline") {
    InlineTrace t;
    if (const json* recs = r.child("records")) t.records = read_records(*recs);
    if (r.has("duration")) {
      Cycle d = 0;
      r.read("duration", d);
      t.duration = d;
    }
    r.finish();
    return t;
  }
  throw ConfigError("traffic.kind must be 'synthetic', 'trace' or 'inline'");
}

}  // namespace

void SimConfig::validate() const {
  mesh.validate();
  router.validate();
  controller.validate();
  energy.validate();
  if (max_cycles < 0) throw ConfigError("max_cycles must be >= 0");
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, SyntheticSpec>) {
          t.validate(mesh);
          if (flits_for_bytes(t.packet_bytes, energy.flit_bits) > 0xFFFF) {
            throw ConfigError("traffic.packet_bytes exceeds 65535 flits");
          }
        } else {
          if (t.duration && *t.duration < 0) throw ConfigError("traffic.duration must be >= 0");
          if constexpr (std::is_same_v<T, InlineTrace>) {
            try {
              check_records(t.records, mesh, energy.flit_bits, t.duration);
            } catch (const TraceValidationError& e) {
              throw ConfigError(std::string("traffic.records ") + e.what());
            }
          }
        }
      },
      traffic);
  if (mode != Mode::Baseline) {
    const double longest = static_cast<double>(mesh.node_count() - 1) * mesh.spacing_mm;
    try {
      optical_flit_energy(longest, energy);
    } catch (const InfeasibleSpanError& e) {
      throw ConfigError(std::string("optical bus cannot span the mesh: ") + e.what());
    }
  }
}

SimConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  SimConfig c;
  ObjectReader r(j, "");
  if (const json* m = r.child("mesh")) {
    ObjectReader mr(*m, "mesh");
    mr.read("width", c.mesh.width);
    mr.read("height", c.mesh.height);
    mr.read("spacing_mm", c.mesh.spacing_mm);
    mr.read("clock_ghz", c.mesh.clock_ghz);
    mr.finish();
  }
  if (const json* m = r.child("router")) {
    ObjectReader rr(*m, "router");
    rr.read("num_vcs", c.router.num_vcs);
    rr.read("vc_depth", c.router.vc_depth);
    rr.read("router_delay", c.router.router_delay);
    rr.read("link_delay_electrical", c.router.link_delay_electrical);
    rr.read("link_delay_optical", c.router.link_delay_optical);
    rr.read("local_delay", c.router.local_delay);
    rr.read("credit_delay", c.router.credit_delay);
    rr.finish();
  }
  std::string mode(to_string(c.mode));
  r.read("mode", mode);
  c.mode = parse_mode(mode);
  if (const json* m = r.child("controller")) {
    ObjectReader cr(*m, "controller");
    cr.read("alpha", c.controller.alpha);
    cr.read("window_min", c.controller.window_min);
    cr.read("growth_cap", c.controller.growth_cap);
    cr.read("initial_window", c.controller.initial_window);
    cr.read("bootstrap_factor", c.controller.bootstrap_factor);
    cr.read("reconfig_period", c.controller.reconfig_period);
    std::string cost(cost_name(c.controller.latency_cost));
    cr.read("latency_cost", cost);
    c.controller.latency_cost = parse_cost(cost);
    cr.read("min_hops", c.controller.min_hops);
    cr.read("bidirectional", c.controller.bidirectional);
    cr.read("strict_pause", c.controller.strict_pause);
    cr.finish();
  }
  if (const json* m = r.child("energy")) {
    ObjectReader er(*m, "energy");
    er.read("e_router", c.energy.e_router);
    er.read("e_link_per_mm", c.energy.e_link_per_mm);
    er.read("e_mod_per_bit", c.energy.e_mod_per_bit);
    er.read("laser_efficiency", c.energy.laser_efficiency);
    er.read("waveguide_loss_db_per_cm", c.energy.waveguide_loss_db_per_cm);
    er.read("detector_sensitivity", c.energy.detector_sensitivity);
    er.read("link_rate", c.energy.link_rate);
    er.read("flit_bits", c.energy.flit_bits);
    er.read("laser_max_output", c.energy.laser_max_output);
    er.finish();
  }
  if (const json* t = r.child("traffic")) c.traffic = read_traffic(*t, base_dir);
  r.read("max_cycles", c.max_cycles);
  r.read("drain", c.drain);
  r.read("seed", c.seed);
  r.read("check_invariants", c.check_invariants);
  r.finish();
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

namespace detail {

json config_json(const SimConfig& c) {
  json j;
  j["mesh"] = {{"width", c.mesh.width},
               {"height", c.mesh.height},
               {"spacing_mm", c.mesh.spacing_mm},
               {"clock_ghz", c.mesh.clock_ghz}};
  j["router"] = {{"num_vcs", c.router.num_vcs},
                 {"vc_depth", c.router.vc_depth},
                 {"router_delay", c.router.router_delay},
                 {"link_delay_electrical", c.router.link_delay_electrical},
                 {"link_delay_optical", c.router.link_delay_optical},
                 {"local_delay", c.router.local_delay},
                 {"credit_delay", c.router.credit_delay}};
  j["mode"] = std::string(to_string(c.mode));
  const ControllerParams& p = c.controller;
  j["controller"] = {{"alpha", p.alpha},
                     {"window_min", p.window_min},
                     {"growth_cap", p.growth_cap},
                     {"initial_window", p.initial_window},
                     {"bootstrap_factor", p.bootstrap_factor},
                     {"reconfig_period", p.reconfig_period},
                     {"latency_cost", std::string(cost_name(p.latency_cost))},
                     {"min_hops", p.min_hops},
                     {"bidirectional", p.bidirectional},
                     {"strict_pause", p.strict_pause}};
  const EnergyModel& e = c.energy;
  j["energy"] = {{"e_router", e.e_router},
                 {"e_link_per_mm", e.e_link_per_mm},
                 {"e_mod_per_bit", e.e_mod_per_bit},
                 {"laser_efficiency", e.laser_efficiency},
                 {"waveguide_loss_db_per_cm", e.waveguide_loss_db_per_cm},
                 {"detector_sensitivity", e.detector_sensitivity},
                 {"link_rate", e.link_rate},
                 {"flit_bits", e.flit_bits},
                 {"laser_max_output", e.laser_max_output}};
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        json tj;
        if constexpr (std::is_same_v<T, SyntheticSpec>) {
          tj["kind"] = "synthetic";
          tj["pattern"] = std::string(to_string(t.pattern));
          tj["duration"] = t.duration;
          tj["injection_rate"] = t.injection_rate;
          tj["packet_bytes"] = t.packet_bytes;
          json pairs = json::array();
          for (const auto& [a, b] : t.fcp.hot_pairs) pairs.push_back({a.index, b.index});
          tj["fcp"] = {{"hot_pairs", pairs}, {"hot_share", t.fcp.hot_share}};
          tj["mfm"] = {{"few_count", t.mfm.few_count},
                       {"placement", std::string(placement_name(t.mfm.placement))},
                       {"many_to_few_cycles", t.mfm.many_to_few_cycles},
                       {"few_to_many_cycles", t.mfm.few_to_many_cycles}};
        } else if constexpr (std::is_same_v<T, TraceFile>) {
          tj["kind"] = "trace";
          tj["path"] = t.path;
          if (t.duration) tj["duration"] = *t.duration;
        } else {
          tj["kind"] = "inline";
          json recs = json::array();
          for (const TraceRecord& r : t.records) recs.push_back({r.cycle, r.src.index, r.dst.index, r.size_bytes});
          tj["records"] = recs;
          if (t.duration) tj["duration"] = *t.duration;
        }
        j["traffic"] = tj;
      },
      c.traffic);
  j["max_cycles"] = c.max_cycles;
  j["drain"] = c.drain;
  j["seed"] = c.seed;
  j["check_invariants"] = c.check_invariants;
  return j;
}

}  // namespace detail

std::string config_to_json(const SimConfig& config, int indent) { return detail::config_json(config).dump(indent); }

MaterializedTraffic materialize_traffic(const SimConfig& config) {
  MaterializedTraffic out;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, SyntheticSpec>) {
          SyntheticSpec spec = t;
          spec.seed = config.seed;
          out.records = generate(spec, config.mesh, config.energy.flit_bits);
          out.horizon = spec.duration;
        } else {
          if constexpr (std::is_same_v<T, TraceFile>) {
            std::ifstream in(t.path);
            if (!in) throw ConfigError("cannot open trace " + t.path);
            out.records = load_trace(in, config.mesh);
          } else {
            out.records = t.records;
          }
          check_records(out.records, config.mesh, config.energy.flit_bits, t.duration);
          out.horizon = t.duration ? *t.duration : (out.records.empty() ? 0 : out.records.back().cycle + 1);
        }
      },
      config.traffic);
  return out;
}

}  // namespace xnoc
