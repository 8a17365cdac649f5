// Copyright 2026 The singlet authors
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

#include "singlet/dynamics.hpp"
#include "singlet/effective.hpp"

using namespace singlet;

static void BM_Compile(benchmark::State& state) {
  const SystemParams p = figure3_preset(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compile(p));
  }
}
BENCHMARK(BM_Compile);

static void BM_LindbladRhs(benchmark::State& state) {
  const SystemParams p = figure3_preset(1.0);
  const ModelSpec m = compile(p);
  const Matrix rho = initial_state("mixture4", p.d_t, p.d_c);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lindblad_rhs(m, rho, t));
    t += 0.1;
  }
}
BENCHMARK(BM_LindbladRhs);

static void BM_IntegrateUnitTime(benchmark::State& state) {
  const SystemParams p = figure3_preset(1.0);
  const ModelSpec m = compile(p);
  const Matrix rho0 = initial_state("mixture4", p.d_t, p.d_c);
  IntegrateOptions io;
  io.rtol = 1e-8;
  io.atol = 1e-9;
  io.sample_interval = 10.0;
  io.track_eigenvalues = false;
  const double t_end = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(m, rho0, t_end, io));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateUnitTime)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_BuildLiouvillianSmall(benchmark::State& state) {
  SystemParams p = figure3_preset(1.0);
  p.d_t = 3;
  p.d_c = 2;
  const ModelSpec m = compile(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_liouvillian(m, 0.0));
  }
}
BENCHMARK(BM_BuildLiouvillianSmall);

static void BM_EffectiveRates(benchmark::State& state) {
  const SystemParams p = figure3_preset(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_rates(p));
  }
}
BENCHMARK(BM_EffectiveRates);

static void BM_DressedSpectrum(benchmark::State& state) {
  const SystemParams p = figure3_preset(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dressed_spectrum(p, 3));
  }
}
BENCHMARK(BM_DressedSpectrum);

BENCHMARK_MAIN();
