// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include "xnoc/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "config_json.hpp"
#include "xnoc/errors.hpp"
#include "xnoc/traffic.hpp"

namespace xnoc {

using nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw InvariantError("double formatting failed");
  return std::string(buf, ptr);
}

void write_windows_csv(std::ostream& os, const RunReport& report) {
  os << "window_index,phase,start_cycle,end_cycle,delivered_packets,delivered_flits,total_latency_cycles,"
        "mean_latency_cycles,max_latency_cycles,dynamic_energy_joules,bus_flit_count,queue_peak_max,"
        "queue_peak_node\n";
  for (const WindowMetrics& w : report.windows) {
    os << w.window_index << ',' << to_string(w.phase) << ',' << w.start_cycle << ',' << w.end_cycle << ','
       << w.delivered_packets << ',' << w.delivered_flits << ',' << w.total_latency_cycles << ','
       << format_double(w.mean_latency_cycles()) << ',' << w.max_latency_cycles << ','
       << format_double(w.dynamic_energy_joules) << ',' << w.bus_flit_count << ',' << w.queue_peak_max() << ','
       << w.queue_peak_node() << '\n';
  }
}

namespace {

json metrics_json(const WindowMetrics& m) {
  return {{"delivered_packets", m.delivered_packets},
          {"delivered_flits", m.delivered_flits},
          {"total_latency_cycles", m.total_latency_cycles},
          {"mean_latency_cycles", m.mean_latency_cycles()},
          {"max_latency_cycles", m.max_latency_cycles},
          {"dynamic_energy_joules", m.dynamic_energy_joules},
          {"bus_flit_count", m.bus_flit_count}};
}

json ratio_json(const std::optional<double>& r) { return r ? json(*r) : json(nullptr); }

json run_json(const RunReport& r, const std::optional<Normalization>& norm) {
  json j;
  j["config"] = detail::config_json(r.config);
  j["mode"] = std::string(to_string(r.config.mode));
  j["seed"] = r.config.seed;
  j["prng"] = std::string(kPrngIdentity);
  j["latency_cost"] = r.config.controller.latency_cost == LatencyCost::Mean ? "mean" : "total";
  j["energy_constants"] = {{"electrical", "placeholder"}, {"optical", "link-model"}};
  j["totals"] = metrics_json(r.totals);
  j["injected_packets"] = r.injected_packets;
  j["delivered_packets"] = r.totals.delivered_packets;
  j["undelivered_packets"] = r.undelivered_packets;
  j["bus_activations"] = r.bus_activations;
  j["traffic_horizon"] = r.traffic_horizon;
  j["end_cycle"] = r.end_cycle;
  j["partial"] = r.partial;
  std::size_t windows = 0;
  std::size_t reconfigs = 0;
  for (const WindowMetrics& w : r.windows) {
    if (w.phase == IntervalPhase::Window) ++windows;
    if (w.phase == IntervalPhase::Reconfig) ++reconfigs;
  }
  j["counts"] = {{"intervals", r.windows.size()},
                 {"windows", windows},
                 {"reconfig_periods", reconfigs},
                 {"progression_steps", r.progression.size()}};
  j["queue_peak"] = {{"max", r.totals.queue_peak_max()}, {"node", r.totals.queue_peak_node()}};
  if (norm) {
    j["normalization"] = {
        {"baseline_mean_latency", norm->baseline_mean_latency},
        {"baseline_dynamic_energy", norm->baseline_dynamic_energy},
        {"latency_ratio", ratio_json(normalized(r.totals.mean_latency_cycles(), norm->baseline_mean_latency))},
        {"energy_ratio", ratio_json(normalized(r.totals.dynamic_energy_joules, norm->baseline_dynamic_energy))}};
  } else {
    j["normalization"] = nullptr;
  }
  return j;
}

std::string ratio_text(const std::optional<double>& r) { return r ? format_double(*r) : "n/a"; }

void open_for_write(std::ofstream& f, const std::filesystem::path& p) {
  f.open(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
}

}  // namespace

void write_run_json(std::ostream& os, const RunReport& report, const std::optional<Normalization>& normalization) {
  os << run_json(report, normalization).dump(2) << '\n';
}

void write_comparison_csv(std::ostream& os, const Comparison& c) {
  os << "label,mode,delivered_packets,mean_latency_cycles,dynamic_energy_joules,latency_ratio,energy_ratio\n";
  for (const ComparisonRow& r : c.rows) {
    os << r.label << ',' << to_string(r.mode) << ',' << r.delivered_packets << ','
       << format_double(r.mean_latency_cycles) << ',' << format_double(r.dynamic_energy_joules) << ','
       << ratio_text(r.latency_ratio) << ',' << ratio_text(r.energy_ratio) << '\n';
  }
}

void write_comparison_json(std::ostream& os, const Comparison& c) {
  json rows = json::array();
  for (const ComparisonRow& r : c.rows) {
    rows.push_back({{"label", r.label},
                    {"mode", std::string(to_string(r.mode))},
                    {"delivered_packets", r.delivered_packets},
                    {"mean_latency_cycles", r.mean_latency_cycles},
                    {"dynamic_energy_joules", r.dynamic_energy_joules},
                    {"latency_ratio", ratio_json(r.latency_ratio)},
                    {"energy_ratio", ratio_json(r.energy_ratio)}});
  }
  json j;
  j["baseline"] = c.rows.empty() ? json(nullptr) : json(c.rows[c.baseline_index].label);
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

void write_run_outputs(const std::filesystem::path& dir, const RunReport& report,
                       const std::optional<Normalization>& normalization) {
  std::filesystem::create_directories(dir);
  std::ofstream f;
  open_for_write(f, dir / "windows.csv");
  write_windows_csv(f, report);
  f.close();
  open_for_write(f, dir / "progression.csv");
  write_progression_csv(f, report.progression);
  f.close();
  open_for_write(f, dir / "run.json");
  write_run_json(f, report, normalization);
}

void write_comparison_outputs(const std::filesystem::path& dir, const Comparison& c) {
  std::filesystem::create_directories(dir);
  const WindowMetrics& base = c.reports.at(c.baseline_index).totals;
  const Normalization norm{base.mean_latency_cycles(), base.dynamic_energy_joules};
  for (std::size_t i = 0; i < c.reports.size(); ++i) {
    write_run_outputs(dir / c.rows.at(i).label, c.reports[i], norm);
  }
  std::ofstream f;
  open_for_write(f, dir / "compare.csv");
  write_comparison_csv(f, c);
  f.close();
  open_for_write(f, dir / "compare.json");
  write_comparison_json(f, c);
}

}  // namespace xnoc
