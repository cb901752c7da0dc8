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

#include "teleprep/pauli/clifford_tableau.hpp"
#include "teleprep/pauli/zk_element.hpp"

using teleprep::Rng;

static void bench_tableau_from_circuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  auto gates = teleprep::circuit::random_clifford_circuit(n, 5 * n * n, rng);
  for (auto _ : state) {
    auto t = teleprep::pauli::CliffordTableau::from_circuit(gates, n);
    benchmark::DoNotOptimize(t.x_image(0));
  }
  state.SetItemsProcessed(state.iterations() * gates.size());
}
BENCHMARK(bench_tableau_from_circuit)->Arg(8)->Arg(16)->Arg(32);

static void bench_factorize_correction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  auto gates = teleprep::circuit::random_clifford_circuit(n, 5 * n * n, rng);
  auto t = teleprep::pauli::CliffordTableau::from_circuit(gates, n);
  const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  for (auto _ : state) {
    auto p = teleprep::pauli::factorize_correction(t, rng.next_u64() & mask, rng.next_u64() & mask);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(bench_factorize_correction)->Arg(8)->Arg(16)->Arg(32);

static void bench_zk_multiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  auto a = teleprep::pauli::random_zk(n, 3, rng);
  auto b = teleprep::pauli::random_zk(n, 3, rng);
  for (auto _ : state) {
    auto c = teleprep::pauli::zk_multiply(a, b);
    benchmark::DoNotOptimize(c.monomials.data());
  }
}
BENCHMARK(bench_zk_multiply)->Arg(8)->Arg(12)->Arg(16);

static void bench_zk_conjugate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  auto g = teleprep::pauli::random_zk(n, 3, rng);
  const std::uint64_t s = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
  for (auto _ : state) {
    auto gp = teleprep::pauli::zk_conjugate_by_x(g, s);
    benchmark::DoNotOptimize(gp.monomials.data());
  }
}
BENCHMARK(bench_zk_conjugate)->Arg(8)->Arg(12)->Arg(16);
