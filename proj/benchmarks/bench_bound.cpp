// Copyright 2026 The qslcert Authors
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

#include <numbers>
#include <vector>

#include "qslcert/anneal.hpp"
#include "qslcert/stirap.hpp"

namespace {

using namespace qslcert;

void BM_StirapBound(benchmark::State& state) {
  const stirap::StirapParams p{.delta = 0.5, .epsilon = 0.1, .t_final = 10.0, .omega0 = 1.0};
  const stirap::RunOptions opts{.steps = 4000, .certify = false, .certify_options = {}};
  for (auto _ : state) benchmark::DoNotOptimize(stirap::run(p, opts));
}
BENCHMARK(BM_StirapBound);

void BM_AnnealBound(benchmark::State& state) {
  anneal::AnnealParams p;
  p.n_qubits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(anneal::bound(p));
}
BENCHMARK(BM_AnnealBound)->Arg(100)->Arg(1000);

void BM_SigmaMomentOracle(benchmark::State& state) {
  anneal::AnnealParams p;
  p.n_qubits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(anneal::sigma_moment_oracle(p, 0.5));
}
BENCHMARK(BM_SigmaMomentOracle)->Arg(100)->Arg(1000);

// 64-point eps_gamma sweep at N = 100.
void BM_EpsGammaSweep(benchmark::State& state) {
  const anneal::AnnealParams p;
  std::vector<double> grid;
  for (int k = 1; k <= 64; ++k) grid.push_back(k * (std::numbers::pi / 2) / 64);
  for (auto _ : state) benchmark::DoNotOptimize(anneal::sweep_eps_gamma(p, grid));
}
BENCHMARK(BM_EpsGammaSweep)->Unit(benchmark::kMillisecond);

}  // namespace
