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

#include "teleprep/dme/dme.hpp"
#include "teleprep/protocol/zk_protocol.hpp"

using teleprep::Rng;

static void bench_cascade_full(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const int a = std::max(1, k - 1);
  Rng gen(11);
  for (auto _ : state) {
    Rng rng(gen.next_u64());
    auto u = teleprep::pauli::random_zk(n, k, rng);
    auto res = teleprep::protocol::precompute_resource(u, std::min(a, std::max(1, teleprep::pauli::zk_level(u) - 1)), rng);
    teleprep::sim::Statevector input;
    input.allocate(n, std::string(static_cast<std::size_t>(n), '+'));
    auto result = teleprep::protocol::consume(res, std::move(input), rng);
    benchmark::DoNotOptimize(result.final_pauli);
  }
}
BENCHMARK(bench_cascade_full)->Args({2, 2})->Args({3, 3});

static void bench_cascade_ledger_only(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng gen(13);
  for (auto _ : state) {
    Rng rng(gen.next_u64());
    auto u = teleprep::pauli::random_zk(n, 2, rng);
    teleprep::protocol::PrecomputeOptions opt;
    opt.simulate = false;
    auto res = teleprep::protocol::precompute_resource(u, 1, rng, opt);
    auto result = teleprep::protocol::consume_ledger_only(res, rng);
    benchmark::DoNotOptimize(result.classical_op_count);
  }
}
BENCHMARK(bench_cascade_ledger_only)->Arg(8)->Arg(12)->Arg(16);

static void bench_dme_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(17);
  auto rho = teleprep::dme::random_pure_density(n, rng);
  auto target = teleprep::dme::random_pure_density(n, rng);
  for (auto _ : state) {
    auto out = teleprep::dme::dme_apply(target, rho, 0.3, 1);
    benchmark::DoNotOptimize(out.matrix().data());
  }
}
BENCHMARK(bench_dme_step)->Arg(1)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
