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

#include "qslcert/anneal.hpp"
#include "qslcert/propagator.hpp"
#include "qslcert/stirap.hpp"

namespace {

using namespace qslcert;

void BM_PropagateStirap(benchmark::State& state) {
  const stirap::StirapParams p{.delta = 0.5, .epsilon = 0.1, .t_final = 10.0, .omega0 = 1.0};
  const TimeGrid grid(0, p.t_final, static_cast<int>(state.range(0)));
  const HamiltonianFn h = [&](double t) { return stirap::h1(p, t); };
  const QuantumState psi0 = stirap::designed_state(p, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_final(h, psi0, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PropagateStirap)->Arg(1000)->Arg(4000);

// Collective-spin propagation; dimension N + 1. Throughput only: 4000 steps
// is under-resolved for large N, so the drift guard is off.
void BM_PropagateAnneal(benchmark::State& state) {
  anneal::AnnealParams p;
  p.n_qubits = static_cast<int>(state.range(0));
  p.eps_beta = 0.1;
  const anneal::Model model(p);
  const TimeGrid grid(0, p.t_final, 4000);
  const HamiltonianFn h = [&](double t) { return model.h1(t); };
  const QuantumState psi0 = model.designed_state(0.0);
  PropagationOptions opts;
  opts.norm_tolerance = 1e300;
  for (auto _ : state) benchmark::DoNotOptimize(propagate_final(h, psi0, grid, opts));
  state.SetItemsProcessed(state.iterations() * 4000);
}
BENCHMARK(BM_PropagateAnneal)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
