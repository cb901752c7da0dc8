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

#include "teleprep/cost/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "teleprep/common/errors.hpp"
#include "teleprep/cost/mcz_decomposition.hpp"

namespace teleprep::cost {

GateCountLedger count_circuit(std::span<const circuit::CircuitOp> ops, int width) {
  if (width < 0) throw UsageError("count_circuit: negative width");
  GateCountLedger led;
  led.peak_width = static_cast<std::uint64_t>(width);
  std::vector<std::uint64_t> busy(static_cast<std::size_t>(width), 0);
  std::vector<std::uint64_t> active_per_layer;  // 1-indexed via position+1

  std::uint64_t depth = 0;
  for (const auto& op : ops) {
    std::uint64_t layer = 0;
    for (int q : op.qubits) {
      if (q < 0 || q >= width) throw UsageError("count_circuit: qubit index out of width");
      layer = std::max(layer, busy[static_cast<std::size_t>(q)] + 1);
    }
    if (layer == 0) layer = 1;
    for (int q : op.qubits) busy[static_cast<std::size_t>(q)] = layer;
    if (active_per_layer.size() < layer) active_per_layer.resize(layer, 0);
    active_per_layer[layer - 1] += op.qubits.size();
    depth = std::max(depth, layer);

    switch (op.kind) {
      case circuit::CircuitOp::Kind::kMeasure:
        ++led.measurements;
        break;
      case circuit::CircuitOp::Kind::kGate:
      case circuit::CircuitOp::Kind::kCondGate:
        if (circuit::is_t_like(op.gate))
          ++led.t_count;
        else if (circuit::is_two_qubit(op.gate))
          ++led.clifford_2q;
        else
          ++led.clifford_1q;
        break;
    }
  }
  led.depth = depth;
  for (std::uint64_t layer = 0; layer < depth; ++layer)
    led.identity_ticks += static_cast<std::uint64_t>(width) - active_per_layer[layer];
  return led;
}

GateCountLedger standard_cost_zk(const pauli::ZkElement& u) {
  // One shared ancilla pool sized for the largest term.
  int max_term = 0;
  for (std::uint64_t m : u.monomials) max_term = std::max(max_term, std::popcount(m));
  const int pool = max_term >= 4 ? max_term - 2 : 0;
  const int width = u.n + pool;

  std::vector<circuit::CircuitOp> all;
  for (std::uint64_t m : u.monomials) {
    std::vector<int> targets;
    for (int q = 0; q < u.n; ++q)
      if ((m >> q) & 1u) targets.push_back(q);
    MczDecomposition d = decompose_mcz(static_cast<int>(targets.size()));
    // Remap: decomposition indices [0, j) -> targets, ancillas -> pool slots.
    for (circuit::CircuitOp op : d.ops) {
      for (int& q : op.qubits)
        q = q < d.j ? targets[static_cast<std::size_t>(q)] : u.n + (q - d.j);
      if (op.key >= 0) op.key += static_cast<int>(all.size());  // keep keys unique
      all.push_back(std::move(op));
    }
  }
  return count_circuit(all, width);
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw UsageError("fit_scaling: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [size, count] : points) {
    if (size <= 0 || count <= 0) throw UsageError("fit_scaling: nonpositive value");
    const double x = std::log(size);
    const double y = std::log(count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw UsageError("fit_scaling: degenerate sizes");
  ScalingFit fit;
  fit.exponent = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / m;
  const double ss_tot = syy - sy * sy / m;
  double ss_res = 0;
  for (const auto& [size, count] : points) {
    const double pred = fit.intercept + fit.exponent * std::log(size);
    const double r = std::log(count) - pred;
    ss_res += r * r;
  }
  fit.r_squared = ss_tot < 1e-15 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  fit.points = points;
  return fit;
}

}  // namespace teleprep::cost
