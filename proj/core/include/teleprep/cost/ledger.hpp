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
#include <span>
#include <unordered_map>
#include <vector>

#include "teleprep/circuit/circuit.hpp"

namespace teleprep::cost {

/// Per-phase gate accounting in the Clifford+T+measurement gate set.
/// identity_ticks charges one unit for every (live but idle qubit, depth
/// layer) pair, so totals grow like width x depth: storage is not free.
struct GateCountLedger {
  std::uint64_t clifford_1q = 0;
  std::uint64_t clifford_2q = 0;
  std::uint64_t t_count = 0;
  std::uint64_t measurements = 0;
  std::uint64_t identity_ticks = 0;
  std::uint64_t depth = 0;
  std::uint64_t peak_width = 0;

  std::uint64_t total_gates() const { return clifford_1q + clifford_2q + t_count; }
  std::uint64_t total_events() const { return total_gates() + measurements; }

  /// Sequential composition: counts add, peak widths max. Associative and
  /// commutative with the zero ledger as identity.
  GateCountLedger& merge(const GateCountLedger& other);
  friend GateCountLedger operator+(GateCountLedger a, const GateCountLedger& b) {
    a.merge(b);
    return a;
  }
  bool operator==(const GateCountLedger&) const = default;
};

/// Streaming gate recorder: greedy layering by qubit-disjointness plus
/// per-qubit idle-tick accrual from allocation to measurement/recycle.
///
/// Every recorded event also bumps an optional shared run-wide counter so a
/// cross-check can confirm that each executed gate landed in exactly one
/// phase ledger.
class LedgerRecorder {
 public:
  explicit LedgerRecorder(GateCountLedger* ledger, std::uint64_t* global_events = nullptr)
      : ledger_(ledger), global_events_(global_events) {}

  /// Detaches/attaches the run-wide event counter (e.g. while statically
  /// charging work that will physically execute, and count, later).
  void set_global_events(std::uint64_t* counter) { global_events_ = counter; }

  void on_alloc(std::span<const int> labels);
  void on_gate(circuit::Gate g, std::span<const int> labels);
  /// A native multi-controlled-Z event, charged as its frozen Clifford+T
  /// decomposition (counts and depth of the lowered sequence).
  void on_mcz(std::span<const int> labels);
  void on_measure(int label);
  void on_discard(int label);
  /// Constant-depth blocks (fanout trees): simulated depth accrues as usual,
  /// while the analytic column counts the block as one layer.
  void begin_constant_depth_block();
  void end_constant_depth_block();

  /// Flushes idle ticks of still-live qubits up to the final depth.
  void finalize();

  std::uint64_t analytic_depth() const;

 private:
  std::uint64_t advance(std::span<const int> labels, std::uint64_t span_layers);

  GateCountLedger* ledger_;
  std::uint64_t* global_events_;
  std::unordered_map<int, std::uint64_t> busy_until_;  // label -> last active layer
  std::uint64_t frontier_ = 0;                         // max layer used so far
  std::uint64_t analytic_extra_ = 0;  // layers discounted inside constant-depth blocks
  std::uint64_t block_start_ = 0;
  bool in_block_ = false;
};

}  // namespace teleprep::cost
