// Copyright 2026 The lyaplab Authors
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


#include <benchmark/benchmark.h>

#include "lyap/field.hpp"
#include "lyap/mc.hpp"

namespace {

lyap::McConfig bench_config(std::size_t paths) {
  lyap::McConfig cfg;
  cfg.n_paths = paths;
  cfg.dt = 1e-3;
  cfg.t_max = 10.0;
  cfg.u_grid = {2, 3, 4};
  cfg.workers = 1;
  return cfg;
}

// Paths per second, one worker.
void BM_PathsConstant1D(benchmark::State& state) {
  const lyap::ConstantField field(1.0, 1);
  const auto cfg = bench_config(500);
  for (auto _ : state) benchmark::DoNotOptimize(lyap::simulate_travel_costs(field, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.n_paths));
}
BENCHMARK(BM_PathsConstant1D)->Unit(benchmark::kMillisecond);

void BM_PathsTorus1D(benchmark::State& state) {
  const lyap::TorusRealizationField field(lyap::TorusPotential::trig(2.0, {1.0}, {}), 0.0);
  const auto cfg = bench_config(500);
  for (auto _ : state) benchmark::DoNotOptimize(lyap::simulate_travel_costs(field, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.n_paths));
}
BENCHMARK(BM_PathsTorus1D)->Unit(benchmark::kMillisecond);

void BM_PathsConstant2D(benchmark::State& state) {
  const lyap::ConstantField field(1.0, 2);
  auto cfg = bench_config(200);
  cfg.dt = 1e-2;
  for (auto _ : state) benchmark::DoNotOptimize(lyap::simulate_travel_costs(field, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.n_paths));
}
BENCHMARK(BM_PathsConstant2D)->Unit(benchmark::kMillisecond);

}  // namespace
