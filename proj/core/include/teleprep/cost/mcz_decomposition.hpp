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

#include "teleprep/circuit/circuit.hpp"

namespace teleprep::cost {

/// Clifford+T realization of a multi-controlled Z on j qubits.
///
/// Frozen constructions:
///   j = 1, 2      plain Z / CZ (no T gates)
///   j = 3         the standard 7-T CCZ circuit
///   j >= 4        an AND ladder: j-2 ancillas accumulate the conjunction of
///                 the first j-1 qubits (4 T gates per AND), one CZ applies
///                 the phase, and the ladder is uncomputed measurement-based
///                 (H, measure, classically controlled CZ fix-up; 0 T gates).
///
/// Qubit indices 0..j-1 are the mcz targets; indices j..j+ancilla_count-1 are
/// ancillas that start and end in |0>.
struct MczDecomposition {
  int j = 0;
  int ancilla_count = 0;
  std::vector<circuit::CircuitOp> ops;

  int total_qubits() const { return j + ancilla_count; }
  std::uint64_t t_count() const;
};

MczDecomposition decompose_mcz(int j);

/// Summary used when a ledger charges a native mcz event: counts and greedy
/// depth of the frozen decomposition.
struct MczCost {
  std::uint64_t clifford_1q = 0;
  std::uint64_t clifford_2q = 0;
  std::uint64_t t_count = 0;
  std::uint64_t measurements = 0;
  std::uint64_t depth = 0;
};
MczCost mcz_cost(int j);

}  // namespace teleprep::cost
