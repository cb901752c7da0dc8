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

#include "teleprep/circuit/circuit.hpp"

#include "teleprep/common/errors.hpp"

namespace teleprep::circuit {

std::string gate_name(Gate g) {
  switch (g) {
    case Gate::X: return "X";
    case Gate::Z: return "Z";
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::Sdg: return "Sdg";
    case Gate::T: return "T";
    case Gate::Tdg: return "Tdg";
    case Gate::Cnot: return "CNOT";
    case Gate::Cz: return "CZ";
  }
  throw InternalError("unknown gate");
}

GateSequence random_clifford_circuit(int n, int length, Rng& rng) {
  if (n < 1) throw UsageError("random_clifford_circuit: n must be >= 1");
  if (length < 0) throw UsageError("random_clifford_circuit: length must be >= 0");
  static constexpr Gate kPool[4] = {Gate::H, Gate::S, Gate::Cnot, Gate::Cz};
  GateSequence seq;
  seq.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    Gate g = kPool[rng.next_index(4)];
    if (is_two_qubit(g)) {
      if (n < 2) {
        // No two-qubit gate fits; fall back to a single-qubit choice.
        g = (rng.next_bit() != 0) ? Gate::H : Gate::S;
        seq.push_back(CircuitOp::make_gate(g, {0}));
        continue;
      }
      int a = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      seq.push_back(CircuitOp::make_gate(g, {a, b}));
    } else {
      int a = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n)));
      seq.push_back(CircuitOp::make_gate(g, {a}));
    }
  }
  return seq;
}

}  // namespace teleprep::circuit
