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

#include "teleprep/cost/mcz_decomposition.hpp"

#include "teleprep/common/errors.hpp"
#include "teleprep/cost/counting.hpp"

namespace teleprep::cost {

namespace {

using circuit::CircuitOp;
using circuit::Gate;

void emit_ccz(std::vector<CircuitOp>& ops, int a, int b, int c) {
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {b, c}));
  ops.push_back(CircuitOp::make_gate(Gate::Tdg, {c}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {a, c}));
  ops.push_back(CircuitOp::make_gate(Gate::T, {c}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {b, c}));
  ops.push_back(CircuitOp::make_gate(Gate::Tdg, {c}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {a, c}));
  ops.push_back(CircuitOp::make_gate(Gate::T, {b}));
  ops.push_back(CircuitOp::make_gate(Gate::T, {c}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {a, b}));
  ops.push_back(CircuitOp::make_gate(Gate::T, {a}));
  ops.push_back(CircuitOp::make_gate(Gate::Tdg, {b}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {a, b}));
}

/// t <- x AND y, exactly (the trailing S^dag cancels the +i picked up on the
/// xy=1 branch). 4 T gates.
void emit_and_compute(std::vector<CircuitOp>& ops, int x, int y, int t) {
  ops.push_back(CircuitOp::make_gate(Gate::H, {t}));
  ops.push_back(CircuitOp::make_gate(Gate::T, {t}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {y, t}));
  ops.push_back(CircuitOp::make_gate(Gate::Tdg, {t}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {x, t}));
  ops.push_back(CircuitOp::make_gate(Gate::T, {t}));
  ops.push_back(CircuitOp::make_gate(Gate::Cnot, {y, t}));
  ops.push_back(CircuitOp::make_gate(Gate::Tdg, {t}));
  ops.push_back(CircuitOp::make_gate(Gate::H, {t}));
  ops.push_back(CircuitOp::make_gate(Gate::Sdg, {t}));
}

/// Measurement-based uncompute: H, measure, and a CZ fix-up on the inputs
/// when the outcome is 1. 0 T gates.
void emit_and_uncompute(std::vector<CircuitOp>& ops, int x, int y, int t, int key) {
  ops.push_back(CircuitOp::make_gate(Gate::H, {t}));
  ops.push_back(CircuitOp::make_measure(t, key));
  ops.push_back(CircuitOp::make_cond_gate(Gate::Cz, {x, y}, key));
}

}  // namespace

MczDecomposition decompose_mcz(int j) {
  if (j < 1) throw UsageError("decompose_mcz: j must be >= 1");
  MczDecomposition d;
  d.j = j;
  if (j == 1) {
    d.ops.push_back(CircuitOp::make_gate(Gate::Z, {0}));
    return d;
  }
  if (j == 2) {
    d.ops.push_back(CircuitOp::make_gate(Gate::Cz, {0, 1}));
    return d;
  }
  if (j == 3) {
    emit_ccz(d.ops, 0, 1, 2);
    return d;
  }
  d.ancilla_count = j - 2;
  // Ladder: anc[0] = q0 & q1, anc[i] = anc[i-1] & q_{i+1}, then a plain CZ
  // carries the phase, then uncompute in reverse.
  const int anc0 = j;
  emit_and_compute(d.ops, 0, 1, anc0);
  for (int i = 1; i < d.ancilla_count; ++i)
    emit_and_compute(d.ops, anc0 + i - 1, i + 1, anc0 + i);
  d.ops.push_back(CircuitOp::make_gate(Gate::Cz, {anc0 + d.ancilla_count - 1, j - 1}));
  int key = 0;
  for (int i = d.ancilla_count - 1; i >= 1; --i)
    emit_and_uncompute(d.ops, anc0 + i - 1, i + 1, anc0 + i, key++);
  emit_and_uncompute(d.ops, 0, 1, anc0, key++);
  return d;
}

std::uint64_t MczDecomposition::t_count() const {
  std::uint64_t t = 0;
  for (const auto& op : ops)
    if (op.kind != CircuitOp::Kind::kMeasure && circuit::is_t_like(op.gate)) ++t;
  return t;
}

MczCost mcz_cost(int j) {
  const MczDecomposition d = decompose_mcz(j);
  const GateCountLedger led = count_circuit(d.ops, d.total_qubits());
  return MczCost{led.clifford_1q, led.clifford_2q, led.t_count, led.measurements, led.depth};
}

}  // namespace teleprep::cost
