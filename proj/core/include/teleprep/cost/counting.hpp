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

#include <string>
#include <vector>

#include "teleprep/circuit/circuit.hpp"
#include "teleprep/cost/ledger.hpp"
#include "teleprep/pauli/zk_element.hpp"

namespace teleprep::cost {

/// Static ledger of a lowered circuit at the given register width: greedy
/// layering by qubit-disjointness, identity ticks = sum over layers of
/// (width - active qubits in that layer). Conditional gates are charged as if
/// they fire.
GateCountLedger count_circuit(std::span<const circuit::CircuitOp> ops, int width);

/// Standard (no precomputation) cost of a diagonal element: its mcz terms
/// expanded through decompose_mcz, sharing one ancilla pool, counted at the
/// combined width.
GateCountLedger standard_cost_zk(const pauli::ZkElement& u);

/// Log-log least-squares fit of count vs size.
struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;  // of log(count) vs log(size)
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (size, count)
};
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points);

/// Ledger metadata describing what was known when: the early (precomputation
/// time) input, the late (run time) input, and the outputs.
struct TaskInstance {
  std::string early_input;
  std::string late_input;
  std::string outputs;
};

}  // namespace teleprep::cost
