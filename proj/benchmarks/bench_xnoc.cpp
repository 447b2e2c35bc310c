// Copyright 2026 The xnoc Authors
// Licensed under the Apache License, Version 2.0. You may obtain a copy at
// http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include "xnoc/engine.hpp"
#include "xnoc/reconfig.hpp"
#include "xnoc/routing.hpp"
#include "xnoc/traffic.hpp"

using namespace xnoc;

namespace {

void BM_RouteAllPairs(benchmark::State& state) {
  const MeshSpec mesh;
  const BusAllocation bus{NodeId{0}, NodeId{255}, true, true};
  const auto n = static_cast<std::uint32_t>(mesh.node_count());
  for (auto _ : state) {
    int acc = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
      for (std::uint32_t d = 0; d < n; ++d) {
        if (d != s) acc += static_cast<int>(xy_star_route(NodeId{s}, NodeId{d}, bus, mesh));
      }
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * n * (n - 1));
}
BENCHMARK(BM_RouteAllPairs);

void BM_ControllerStep(benchmark::State& state) {
  WindowController ctrl(ControllerParams{}, true);
  double cost = 1000.0;
  for (auto _ : state) {
    cost = cost * 1.01 + 3.0;
    if (cost > 1e9) cost = 1000.0;
    benchmark::DoNotOptimize(ctrl.complete_window(cost));
  }
}
BENCHMARK(BM_ControllerStep);

void BM_GenerateUniform(benchmark::State& state) {
  SyntheticSpec s;
  s.duration = 10000;
  s.injection_rate = 0.05;
  const MeshSpec mesh{8, 8};
  for (auto _ : state) benchmark::DoNotOptimize(generate(s, mesh, 64));
  state.SetItemsProcessed(state.iterations() * s.duration * mesh.node_count());
}
BENCHMARK(BM_GenerateUniform);

void BM_Run8x8(benchmark::State& state) {
  SimConfig c;
  c.mesh = {8, 8};
  c.mode = static_cast<Mode>(state.range(0));
  SyntheticSpec s;
  s.pattern = Pattern::Fcp;
  s.fcp.hot_pairs = {{NodeId{0}, NodeId{63}}};
  s.duration = 10000;
  s.injection_rate = 0.05;
  c.traffic = s;
  for (auto _ : state) benchmark::DoNotOptimize(run(c).totals.delivered_packets);
  state.SetItemsProcessed(state.iterations() * s.duration);
}
BENCHMARK(BM_Run8x8)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
