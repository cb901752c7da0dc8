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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teleprep/cost/counting.hpp"
#include "teleprep/protocol/zk_protocol.hpp"

namespace teleprep::cost {

/// Consume/prep split of one Clifford gate-teleportation trial batch.
/// `verified` trials also report the worst trace distance to the directly
/// applied unitary; ledger-only batches leave it at -1.
struct CliffordTeleportBench {
  int n = 0;
  int trials = 0;
  GateCountLedger consume;  // summed over trials
  GateCountLedger prep;     // summed over trials
  double max_trace_distance = -1.0;
  bool verified = false;
};

/// Teleports `trials` random Clifford unitaries (generator circuits of length
/// 5n^2) applied to random product inputs. With simulate=false the same
/// control flow runs ledger-only on rng outcome bits.
CliffordTeleportBench clifford_teleport_bench(int n, int trials, std::uint64_t seed,
                                              bool simulate);

/// One size row of the diagonal-protocol cost table (ledgers summed over
/// `trials` runs on fresh random elements).
struct Table1Row {
  int n = 0, k = 0, a = 0;
  int trials = 0;
  bool ledger_only = false;
  GateCountLedger standard_ledger;
  GateCountLedger consume_ledger;
  GateCountLedger prep_ledger;
  std::uint64_t resource_width = 0;
  std::uint64_t classical_ops = 0;
  double max_trace_distance = -1.0;
};

struct Table1Report {
  std::vector<Table1Row> rows;
  ScalingFit standard_fit;
  ScalingFit consume_fit;
  ScalingFit prep_fit;
  ScalingFit classical_fit;
  ScalingFit width_fit;
};

/// Runs the diagonal protocol per n (statevector-verified inside the given
/// envelope, ledger-only beyond it) and fits the per-column exponents.
Table1Report table1_report(const std::vector<int>& n_values, int k, int a, std::uint64_t seed,
                           int trials, int verify_max_n, int verify_max_k);

/// CSV rows `n,k,a,phase,clifford1q,clifford2q,t,meas,idticks,depth,peak_width,classical_ops`
/// with phase in {standard, consume, prep}; classical_ops rides on the
/// consume row.
std::string table1_to_csv(const Table1Report& report);

/// Phase split of a completed run: consume-side quantum cost versus resource
/// preparation, with the classical op count reported alongside.
struct PhaseCosts {
  GateCountLedger consume;
  GateCountLedger prep;
  std::uint64_t classical_ops = 0;
};
PhaseCosts precomputation_cost(const CliffordTeleportBench& bench);
PhaseCosts precomputation_cost(const protocol::ProtocolResult& result,
                               const protocol::LayeredResource& resource);

}  // namespace teleprep::cost
