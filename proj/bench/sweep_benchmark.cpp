// Copyright 2026 The ldp-rl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels: the per-seed cell sweep and the
// validator's vertex scan.

#include <benchmark/benchmark.h>

#include "ldp_rl/environments.hpp"
#include "ldp_rl/harness.hpp"
#include "ldp_rl/logging.hpp"
#include "ldp_rl/mdp.hpp"

namespace ldp_rl {
namespace {

ExperimentConfig sweep_config(int episodes) {
  ExperimentConfig c;
  c.episodes = episodes;
  c.runs = 4;
  c.algorithms = {AlgorithmSpec{AlgorithmKind::kBaseline, {}, 1.0, {}},
                  AlgorithmSpec{AlgorithmKind::kLdp, {1.0, 10.0}, 0.3, {}}};
  return c;
}

void BM_RunCells(benchmark::State& state, Execution exec) {
  const ExperimentConfig c = sweep_config(static_cast<int>(state.range(0)));
  const auto cells = expand_cells(c);
  for (auto _ : state) {
    auto runs = run_cells(c, cells, exec);
    benchmark::DoNotOptimize(runs.data());
  }
  state.SetItemsProcessed(state.iterations() * cells.size() * c.runs * c.episodes);
}

void BM_ValidateHardInstance(benchmark::State& state, Execution exec) {
  const int d = static_cast<int>(state.range(0));
  const LinearMixtureEnv env = make_hard_instance(make_hard_instance_spec(d, 8, 1000000, 1.0));
  for (auto _ : state) {
    auto report = validate_env(env, kDistributionTol, exec);
    benchmark::DoNotOptimize(report.checks.data());
  }
}

BENCHMARK_CAPTURE(BM_RunCells, serial, Execution::kSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunCells, parallel, Execution::kParallel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ValidateHardInstance, serial, Execution::kSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ValidateHardInstance, parallel, Execution::kParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ldp_rl

int main(int argc, char** argv) {
  ldp_rl::init_logging();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
