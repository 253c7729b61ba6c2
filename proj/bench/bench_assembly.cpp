// Copyright 2026 The critcoupling Authors.
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


// Serial reference vs OpenMP-parallel assembly of the Nystrom matrix and the
// bound kernel cache. Set CRIT_THREADS to pin the worker count.

#include <benchmark/benchmark.h>

#include "critcoupling/bounds.hpp"
#include "critcoupling/kernels.hpp"
#include "critcoupling/nystrom.hpp"
#include "critcoupling/potentials.hpp"
#include "critcoupling/quadrature.hpp"

namespace {

using crit::parallel::Execution;

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

void BM_DiscretizeMassless(benchmark::State& state) {
  const auto pot = crit::potentials::builtin("exp");
  const auto grid = crit::quadrature::semi_infinite_grid(crit::quadrature::nystrom_layout(static_cast<int>(state.range(0))));
  const crit::kernels::KernelSpec spec{};
  for (auto _ : state) benchmark::DoNotOptimize(crit::nystrom::discretize(spec, pot, grid, mode(state)).matrix.data());
  state.counters["n"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_DiscretizeMassless)->ArgsProduct({{200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_DiscretizeMassive(benchmark::State& state) {
  const auto pot = crit::potentials::builtin("exp");
  const auto grid = crit::quadrature::semi_infinite_grid(crit::quadrature::nystrom_layout(static_cast<int>(state.range(0))));
  const crit::kernels::KernelSpec spec{0, 1.0, crit::kernels::Variant::massive_exact};
  for (auto _ : state) benchmark::DoNotOptimize(crit::nystrom::discretize(spec, pot, grid, mode(state)).matrix.data());
}
BENCHMARK(BM_DiscretizeMassive)->ArgsProduct({{200}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_BoundCache(benchmark::State& state) {
  const auto pot = crit::potentials::builtin("gauss");
  const auto kernel = crit::bounds::method_kernel(crit::bounds::BoundMethod::variational_massive, 0, 1.0);
  for (auto _ : state) {
    const crit::bounds::BoundEvaluator ev(pot, kernel, crit::quadrature::default_layout(),
                                          crit::quadrature::triangular_inner_rule(), mode(state));
    benchmark::DoNotOptimize(ev.kernel_cache().data());
  }
}
BENCHMARK(BM_BoundCache)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
