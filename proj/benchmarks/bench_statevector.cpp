// Copyright 2026 The teleprep developers
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

#include "teleprep/sim/statevector.hpp"

using teleprep::Rng;
using teleprep::circuit::Gate;
using teleprep::sim::Statevector;

static void bench_single_qubit_gate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Statevector sv;
  auto q = sv.allocate(n, std::string(static_cast<std::size_t>(n), '+'));
  for (auto _ : state) {
    sv.apply_gate(Gate::H, {q[0]});
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(bench_single_qubit_gate)->Arg(10)->Arg(16)->Arg(20);

static void bench_cnot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Statevector sv;
  auto q = sv.allocate(n, std::string(static_cast<std::size_t>(n), '+'));
  for (auto _ : state) {
    sv.apply_gate(Gate::Cnot, {q[0], q[n - 1]});
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(bench_cnot)->Arg(10)->Arg(16)->Arg(20);

static void bench_measure_allocate_cycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  Statevector sv;
  sv.allocate(n, std::string(static_cast<std::size_t>(n), '+'));
  for (auto _ : state) {
    auto fresh = sv.allocate(1, "+");
    sv.measure(fresh[0], teleprep::sim::Basis::Z, rng);
  }
  state.SetItemsProcessed(state.iterations() << n);
}
BENCHMARK(bench_measure_allocate_cycle)->Arg(10)->Arg(16);
