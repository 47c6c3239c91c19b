// Copyright 2026 The prae Authors
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

#include <benchmark/benchmark.h>

#include "prae/certify.hpp"
#include "prae/recovery.hpp"
#include "prae/rng.hpp"

namespace {

prae::RealMatrix spark_frame(int d, int n) {
  prae::Rng rng(1);
  prae::RealMatrix f(d, n);
  for (int j = 0; j < n; ++j) f.col(j) = rng.gaussian_real(d);
  return f;
}

// A generic frame with N = d + 1 has no collision partition, so both search
// variants scan all 2^(N-1) masks.
void BM_PartitionSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const prae::RealMatrix f = spark_frame(n - 1, n);
  for (auto _ : state) benchmark::DoNotOptimize(prae::find_collision_partition_serial(f));
  state.SetItemsProcessed(state.iterations() * (1LL << (n - 1)));
}

void BM_PartitionOmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const prae::RealMatrix f = spark_frame(n - 1, n);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(prae::find_collision_partition_omp(f, threads));
  state.SetItemsProcessed(state.iterations() * (1LL << (n - 1)));
}

void BM_MonteCarlo(benchmark::State& state) {
  const prae::Ensemble e =
      prae::random_ensemble(prae::Field::Complex, 4, 8, 0, prae::RandomKind::General, 2);
  prae::MonteCarloOptions options;
  options.trials = 64;
  options.seed = 3;
  const prae::Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(prae::monte_carlo_injectivity(e, options, exec));
}

void BM_Sweep(benchmark::State& state) {
  prae::SweepConfig config;
  config.field = prae::Field::Real;
  config.d = 5;
  config.n_min = 4;
  config.n_max = 7;
  config.trials = 16;
  config.seed = 4;
  const prae::Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(prae::sweep(config, exec));
}

}  // namespace

BENCHMARK(BM_PartitionSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PartitionOmp)
    ->Args({12, 1})
    ->Args({12, 4})
    ->Args({16, 1})
    ->Args({16, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
