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
#include <string>
#include <vector>

#include "teleprep/common/rng.hpp"

namespace teleprep::circuit {

enum class Gate : std::uint8_t { X, Z, H, S, Sdg, T, Tdg, Cnot, Cz };

inline bool is_two_qubit(Gate g) { return g == Gate::Cnot || g == Gate::Cz; }
inline bool is_clifford(Gate g) { return g != Gate::T && g != Gate::Tdg; }
inline bool is_t_like(Gate g) { return g == Gate::T || g == Gate::Tdg; }

std::string gate_name(Gate g);

/// One instruction of a lowered circuit. Qubit indices are positions in a
/// logical register [0, width); mapping to simulator labels happens at
/// application time.
///
/// kMeasure records a Z-basis measurement whose outcome is stored under `key`;
/// kCondGate applies `gate` only when the outcome stored under `key` was 1.
/// These two kinds exist for measurement-based uncomputation.
struct CircuitOp {
  enum class Kind : std::uint8_t { kGate, kMeasure, kCondGate };

  Kind kind = Kind::kGate;
  Gate gate = Gate::X;
  std::vector<int> qubits;
  int key = -1;

  static CircuitOp make_gate(Gate g, std::vector<int> qs) {
    return CircuitOp{Kind::kGate, g, std::move(qs), -1};
  }
  static CircuitOp make_measure(int qubit, int key) {
    return CircuitOp{Kind::kMeasure, Gate::X, {qubit}, key};
  }
  static CircuitOp make_cond_gate(Gate g, std::vector<int> qs, int key) {
    return CircuitOp{Kind::kCondGate, g, std::move(qs), key};
  }
};

/// A purely unitary gate sequence (no measurements).
using GateSequence = std::vector<CircuitOp>;

/// Uniformly random gates from {H, S, CNOT, CZ} on uniformly random distinct
/// targets. This is a test-input generator: it does NOT sample uniformly from
/// the Clifford group.
GateSequence random_clifford_circuit(int n, int length, Rng& rng);

/// Default generator length used when a circuit stands in for "an arbitrary
/// n-qubit Clifford unitary" in cost comparisons.
inline int default_clifford_length(int n) { return 5 * n * n; }

}  // namespace teleprep::circuit
