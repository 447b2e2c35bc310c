// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "xnoc/config.hpp"
#include "xnoc/engine.hpp"
#include "xnoc/errors.hpp"
#include "xnoc/report_io.hpp"
#include "xnoc/traffic.hpp"
#include "xnoc/validation.hpp"

namespace {

struct TrafficOverrides {
  std::string trace;
  std::string pattern;
  std::optional<std::uint64_t> seed;
};

void add_overrides(CLI::App* cmd, TrafficOverrides& o) {
  cmd->add_option("--trace", o.trace, "Replay a trace file instead of the configured traffic");
  cmd->add_option("--pattern", o.pattern, "Synthetic pattern: uniform, fcp or mfm");
  cmd->add_option("--seed", o.seed, "Traffic seed");
}

void apply(xnoc::SimConfig& cfg, const TrafficOverrides& o) {
  if (!o.trace.empty() && !o.pattern.empty()) throw xnoc::ConfigError("--trace and --pattern are exclusive");
  if (!o.trace.empty()) cfg.traffic = xnoc::TraceFile{o.trace, std::nullopt};
  if (!o.pattern.empty()) {
    auto* spec = std::get_if<xnoc::SyntheticSpec>(&cfg.traffic);
    if (spec == nullptr) {
      cfg.traffic = xnoc::SyntheticSpec{};
      spec = std::get_if<xnoc::SyntheticSpec>(&cfg.traffic);
    }
    spec->pattern = xnoc::parse_pattern(o.pattern);
  }
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
}

void print_summary(const xnoc::RunReport& r) {
  std::cout << "mode " << xnoc::to_string(r.config.mode) << "\n"
            << "cycles " << r.end_cycle << (r.partial ? " (partial)" : "") << "\n"
            << "injected " << r.injected_packets << " delivered " << r.totals.delivered_packets << "\n"
            << "mean_latency_cycles " << xnoc::format_double(r.totals.mean_latency_cycles()) << "\n"
            << "dynamic_energy_joules " << xnoc::format_double(r.totals.dynamic_energy_joules) << "\n"
            << "reconfigurations " << r.progression.size() << " bus_activations " << r.bus_activations << "\n";
  std::cerr << "wall " << r.wall_seconds << " s\n";
}

int run_cmd(const std::string& config_path, const std::string& mode, const TrafficOverrides& o,
            const std::string& out_dir, const std::string& event_log) {
  xnoc::SimConfig cfg = xnoc::load_config(config_path);
  if (!mode.empty()) cfg.mode = xnoc::parse_mode(mode);
  apply(cfg, o);
  std::unique_ptr<std::ofstream> log_file;
  std::unique_ptr<xnoc::TextEventLog> log;
  if (!event_log.empty()) {
    log_file = std::make_unique<std::ofstream>(event_log, std::ios::binary);
    if (!*log_file) throw xnoc::Error("cannot write " + event_log);
    log = std::make_unique<xnoc::TextEventLog>(*log_file);
  }
  const xnoc::RunReport r = xnoc::run(cfg, log.get());
  xnoc::write_run_outputs(out_dir, r);
  print_summary(r);
  return 0;
}

int compare_cmd(const std::string& config_path, const TrafficOverrides& o, const std::string& out_dir, bool serial) {
  xnoc::SimConfig cfg = xnoc::load_config(config_path);
  apply(cfg, o);
  std::vector<xnoc::SimConfig> configs;
  for (const xnoc::Mode m : {xnoc::Mode::Baseline, xnoc::Mode::Static, xnoc::Mode::Adaptive}) {
    configs.push_back(cfg);
    configs.back().mode = m;
  }
  const xnoc::Comparison c = xnoc::compare(configs, !serial);
  xnoc::write_comparison_outputs(out_dir, c);
  xnoc::write_comparison_csv(std::cout, c);
  for (const xnoc::RunReport& r : c.reports) {
    std::cerr << xnoc::to_string(r.config.mode) << " wall " << r.wall_seconds << " s\n";
  }
  return 0;
}

int gen_cmd(const std::string& config_path, const TrafficOverrides& o, std::optional<xnoc::Cycle> duration,
            std::optional<double> rate, const std::string& out) {
  xnoc::SimConfig cfg;
  if (!config_path.empty()) cfg = xnoc::load_config(config_path);
  apply(cfg, o);
  const auto* spec = std::get_if<xnoc::SyntheticSpec>(&cfg.traffic);
  if (spec == nullptr) throw xnoc::ConfigError("gen-trace needs synthetic traffic");
  xnoc::SyntheticSpec s = *spec;
  s.seed = cfg.seed;
  if (duration) s.duration = *duration;
  if (rate) s.injection_rate = *rate;
  const auto records = xnoc::generate(s, cfg.mesh, cfg.energy.flit_bits);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw xnoc::Error("cannot write " + out);
  f << "# cycle src dst size_bytes; pattern " << xnoc::to_string(s.pattern) << " seed " << s.seed << ' '
    << xnoc::kPrngIdentity << '\n';
  xnoc::save_trace(f, records);
  std::cout << records.size() << " records\n";
  return 0;
}

int check_cmd(const std::string& config_path, const std::string& progression) {
  const xnoc::SimConfig cfg = xnoc::load_config(config_path);
  std::ifstream in(progression);
  if (!in) throw xnoc::Error("cannot read " + progression);
  const auto log = xnoc::read_progression_csv(in);
  const xnoc::ControllerParams& p = cfg.controller;
  const auto res = xnoc::validation::controller_replay(
      log, {cfg.mode == xnoc::Mode::Adaptive, p.alpha, p.window_min, p.growth_cap, p.bootstrap_factor});
  const auto bounds = xnoc::validation::window_bounds_check(log, p.window_min, p.growth_cap);
  if (!res.ok) {
    std::cout << "FAIL step " << *res.failing_step << ": " << res.message << "\n";
    return 1;
  }
  if (!bounds.ok) {
    std::cout << "FAIL " << bounds.failure << "\n";
    return 1;
  }
  std::cout << "OK " << log.size() << " steps\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesh network-on-chip simulator with a reconfigurable optical express bus"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mode;
  std::string out_dir = "out";
  std::string event_log;
  std::string gen_out;
  std::string progression;
  bool serial = false;
  std::optional<xnoc::Cycle> duration;
  std::optional<double> rate;
  TrafficOverrides o;

  auto* run = app.add_subcommand("run", "Run one simulation");
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--mode", mode, "baseline, static or adaptive");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--event-log", event_log, "Write flit and delivery events to this file");
  add_overrides(run, o);

  auto* cmp = app.add_subcommand("compare", "Run baseline, static and adaptive on the same traffic");
  cmp->add_option("--config", config_path, "JSON config")->required();
  cmp->add_option("--out", out_dir, "Output directory");
  cmp->add_flag("--serial", serial, "Run the modes one after another");
  add_overrides(cmp, o);

  auto* gen = app.add_subcommand("gen-trace", "Write a synthetic trace file");
  gen->add_option("--config", config_path, "JSON config for mesh and traffic parameters");
  gen->add_option("--duration", duration, "Cycles of traffic");
  gen->add_option("--rate", rate, "Flits per node per cycle");
  gen->add_option("--out", gen_out, "Trace file")->required();
  add_overrides(gen, o);

  auto* chk = app.add_subcommand("check-progression", "Replay a window progression log against the controller");
  chk->add_option("--config", config_path, "JSON config the run used")->required();
  chk->add_option("--progression", progression, "progression.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_cmd(config_path, mode, o, out_dir, event_log);
    if (*cmp) return compare_cmd(config_path, o, out_dir, serial);
    if (*gen) return gen_cmd(config_path, o, duration, rate, gen_out);
    if (*chk) return check_cmd(config_path, progression);
  } catch (const xnoc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const xnoc::TraceValidationError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return 2;
  } catch (const xnoc::HarnessError& e) {
    std::cerr << "comparison error: " << e.what() << "\n";
    return 2;
  } catch (const xnoc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const xnoc::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
