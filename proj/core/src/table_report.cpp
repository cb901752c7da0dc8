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

#include "teleprep/cost/report.hpp"

#include <cstdio>

#include "teleprep/common/errors.hpp"
#include "teleprep/protocol/zk_protocol.hpp"

namespace teleprep::cost {

namespace {

/// Rows describe elements at the declared level; redraw until the sample
/// actually reaches it (at small n a random element is often much shallower,
/// which only adds noise to the per-size fits).
pauli::ZkElement full_level_zk(int n, int k, Rng& rng) {
  for (int attempt = 0; attempt < 4096; ++attempt) {
    pauli::ZkElement u = pauli::random_zk(n, k, rng);
    if (pauli::zk_level(u) == k) return u;
  }
  throw InternalError("full_level_zk: sampling failed");
}

sim::Statevector random_product_state(int n, Rng& rng) {
  std::vector<sim::Statevector::Amplitude> amps{1.0};
  for (int q = 0; q < n; ++q) {
    std::complex<double> a{rng.next_gaussian(), rng.next_gaussian()};
    std::complex<double> b{rng.next_gaussian(), rng.next_gaussian()};
    double norm = std::sqrt(std::norm(a) + std::norm(b));
    a /= norm;
    b /= norm;
    std::vector<sim::Statevector::Amplitude> next(amps.size() * 2);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * a;
      next[2 * i + 1] = amps[i] * b;
    }
    amps = std::move(next);
  }
  return sim::Statevector::from_amplitudes(n, std::move(amps));
}

}  // namespace

CliffordTeleportBench clifford_teleport_bench(int n, int trials, std::uint64_t seed,
                                              bool simulate) {
  if (n < 1) throw UsageError("clifford_teleport_bench: n must be >= 1");
  if (trials < 1) throw UsageError("clifford_teleport_bench: trials must be >= 1");

  CliffordTeleportBench bench;
  bench.n = n;
  bench.trials = trials;
  bench.verified = simulate;

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(Rng::child_seed(seed, static_cast<std::uint64_t>(trial)));
    auto u_circuit = circuit::random_clifford_circuit(n, circuit::default_clifford_length(n), rng);
    auto tableau = pauli::CliffordTableau::from_circuit(u_circuit, n);

    GateCountLedger prep, consume;
    LedgerRecorder prep_rec(&prep);
    teleport::ResourceState resource =
        teleport::prepare_gate_resource(u_circuit, n, &prep_rec, simulate);
    prep_rec.finalize();

    LedgerRecorder consume_rec(&consume);
    if (simulate) {
      sim::Statevector input = random_product_state(n, rng);
      sim::Statevector direct = input;  // oracle: apply the circuit in place
      for (const auto& op : u_circuit) {
        std::vector<int> labels;
        for (int q : op.qubits) labels.push_back(direct.live_qubits()[static_cast<std::size_t>(q)]);
        direct.apply_gate(op.gate, labels);
      }

      std::vector<int> in_labels = input.live_qubits();
      auto remap = input.absorb(resource.state);
      resource.remap_labels(remap);
      teleport::ExecutionContext ctx(input, rng);
      {
        std::vector<int> preexisting = in_labels;
        preexisting.insert(preexisting.end(), resource.input_half.begin(),
                           resource.input_half.end());
        preexisting.insert(preexisting.end(), resource.output_half.begin(),
                           resource.output_half.end());
        consume_rec.on_alloc(preexisting);
      }
      ctx.set_recorder(&consume_rec);
      teleport::gate_teleport_in_place(ctx, in_labels, resource, &tableau);
      consume_rec.finalize();

      bench.max_trace_distance =
          std::max(bench.max_trace_distance, sim::Statevector::trace_distance(input, direct));
    } else {
      teleport::ExecutionContext ctx(rng, /*label_base=*/1 << 20);
      std::vector<int> in_labels = ctx.alloc(n, std::string(static_cast<std::size_t>(n), '0'));
      {
        std::vector<int> preexisting = in_labels;
        preexisting.insert(preexisting.end(), resource.input_half.begin(),
                           resource.input_half.end());
        preexisting.insert(preexisting.end(), resource.output_half.begin(),
                           resource.output_half.end());
        consume_rec.on_alloc(preexisting);
      }
      ctx.set_recorder(&consume_rec);
      teleport::gate_teleport_in_place(ctx, in_labels, resource, &tableau);
      consume_rec.finalize();
    }
    bench.prep.merge(prep);
    bench.consume.merge(consume);
  }
  return bench;
}

Table1Report table1_report(const std::vector<int>& n_values, int k, int a, std::uint64_t seed,
                           int trials, int verify_max_n, int verify_max_k) {
  if (n_values.empty()) throw UsageError("table1_report: empty n range");
  if (trials < 1) throw UsageError("table1_report: trials must be >= 1");

  Table1Report report;
  for (int n : n_values) {
    if (n < k) throw UsageError("table1_report: need n >= k for every row");
    Table1Row row;
    row.n = n;
    row.k = k;
    row.a = a;
    row.trials = trials;
    row.ledger_only = !(n <= verify_max_n && k <= verify_max_k);

    for (int trial = 0; trial < trials; ++trial) {
      Rng rng(Rng::child_seed(seed, static_cast<std::uint64_t>(n) * 1000 +
                                        static_cast<std::uint64_t>(trial)));
      pauli::ZkElement u = full_level_zk(n, k, rng);
      row.standard_ledger.merge(standard_cost_zk(u));

      protocol::PrecomputeOptions popt;
      popt.simulate = !row.ledger_only;
      protocol::LayeredResource res = protocol::precompute_resource(u, a, rng, popt);
      row.resource_width = res.resource_width();

      protocol::ProtocolResult result;
      if (row.ledger_only) {
        result = protocol::consume_ledger_only(res, rng);
      } else {
        sim::Statevector input = random_product_state(n, rng);
        sim::Statevector direct = input;
        protocol::apply_diagonal(direct, direct.live_qubits(), u);
        result = protocol::consume(res, std::move(input), rng);
        row.max_trace_distance = std::max(
            row.max_trace_distance, sim::Statevector::trace_distance(*result.state, direct));
      }
      row.consume_ledger.merge(result.consume_ledger);
      row.prep_ledger.merge(res.prep_ledger);
      row.classical_ops += result.classical_op_count;
    }
    report.rows.push_back(row);
  }

  // Column fits on the positive per-trial means; a column whose points were
  // exactly zero somewhere (tiny random elements) keeps the default fit.
  auto fit_column = [&](ScalingFit& fit, auto getter) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : report.rows) {
      const double mean =
          static_cast<double>(getter(row)) / static_cast<double>(row.trials);
      if (mean > 0) pts.emplace_back(static_cast<double>(row.n), mean);
    }
    if (pts.size() >= 3) fit = fit_scaling(pts);
  };
  fit_column(report.standard_fit,
             [](const Table1Row& r) { return r.standard_ledger.total_gates(); });
  fit_column(report.consume_fit,
             [](const Table1Row& r) { return r.consume_ledger.total_events(); });
  fit_column(report.prep_fit, [](const Table1Row& r) { return r.prep_ledger.total_events(); });
  fit_column(report.classical_fit, [](const Table1Row& r) { return r.classical_ops; });
  fit_column(report.width_fit, [](const Table1Row& r) {
    return r.resource_width * static_cast<std::uint64_t>(r.trials);
  });
  return report;
}

PhaseCosts precomputation_cost(const CliffordTeleportBench& bench) {
  // Classical consume-side work for the factorized correction: 2n outcome
  // bits plus n signed-mask products of stored generator images per trial.
  const auto n = static_cast<std::uint64_t>(bench.n);
  const auto trials = static_cast<std::uint64_t>(bench.trials);
  return PhaseCosts{bench.consume, bench.prep, trials * (2 * n + 2 * n * n)};
}

PhaseCosts precomputation_cost(const protocol::ProtocolResult& result,
                               const protocol::LayeredResource& resource) {
  return PhaseCosts{result.consume_ledger, resource.prep_ledger, result.classical_op_count};
}

std::string table1_to_csv(const Table1Report& report) {
  std::string out =
      "n,k,a,phase,clifford1q,clifford2q,t,meas,idticks,depth,peak_width,classical_ops\n";
  char buf[256];
  auto emit = [&](const Table1Row& row, const char* phase, const GateCountLedger& led,
                  std::uint64_t classical) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%s,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu\n", row.n,
                  row.k, row.a, phase, static_cast<unsigned long long>(led.clifford_1q),
                  static_cast<unsigned long long>(led.clifford_2q),
                  static_cast<unsigned long long>(led.t_count),
                  static_cast<unsigned long long>(led.measurements),
                  static_cast<unsigned long long>(led.identity_ticks),
                  static_cast<unsigned long long>(led.depth),
                  static_cast<unsigned long long>(led.peak_width),
                  static_cast<unsigned long long>(classical));
    out += buf;
  };
  for (const auto& row : report.rows) {
    emit(row, "standard", row.standard_ledger, 0);
    emit(row, "consume", row.consume_ledger, row.classical_ops);
    emit(row, "prep", row.prep_ledger, 0);
  }
  return out;
}

}  // namespace teleprep::cost
