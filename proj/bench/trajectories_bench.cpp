// Copyright 2026 The zsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP dispatch of independent trajectories.

#include <benchmark/benchmark.h>

#include "zsg/experiment.hpp"
#include "zsg/game_io.hpp"

namespace {

zsg::RunConfig matrix_run() {
  zsg::MatrixRunConfig c;
  c.tau = 0.1;
  c.schedule = zsg::StepSchedule::constant(0.5, 0.01);
  c.iterations = 2000;
  c.record_stride = 10;
  c.normalize_q_in_softmax = true;
  return c;
}

void BM_MatrixTrajectories(benchmark::State& state, zsg::Execution execution) {
  const zsg::AnyGame game = zsg::perturbed_rps_game(5);
  const auto run = matrix_run();
  for (auto _ : state) {
    auto records =
        zsg::run_trajectories(game, run, 0, state.range(0), execution);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_VisbrTrajectories(benchmark::State& state, zsg::Execution execution) {
  zsg::RawStochasticGame raw;
  raw.n_states = 2;
  raw.n_actions_1 = raw.n_actions_2 = 2;
  raw.r1 = {zsg::Matrix{{1.0, -1.0}, {-1.0, 1.0}},
            zsg::Matrix{{0.5, 0.0}, {0.0, -0.5}}};
  raw.transition.assign(16, 0.5);
  raw.gamma = 0.6;
  const zsg::AnyGame game = zsg::validate_stochastic_game(raw);
  zsg::VisbrConfig c;
  c.variant = zsg::Variant::kExplore;
  c.tau = c.eps_bar = 0.1;
  c.schedule = zsg::StepSchedule::constant(0.02, 2e-4);
  c.outer_iterations = 5;
  c.inner_iterations = 2000;
  for (auto _ : state) {
    auto records = zsg::run_trajectories(game, c, 0, state.range(0), execution);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK_CAPTURE(BM_MatrixTrajectories, serial, zsg::Execution::kSerial)
    ->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MatrixTrajectories, parallel, zsg::Execution::kParallel)
    ->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VisbrTrajectories, serial, zsg::Execution::kSerial)
    ->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VisbrTrajectories, parallel, zsg::Execution::kParallel)
    ->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
