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

#include "teleprep/teleport/gadgets.hpp"

#include <sstream>

#include "teleprep/common/errors.hpp"

namespace teleprep::teleport {

using circuit::Gate;
using pauli::PauliString;

void ResourceState::remap_labels(const std::unordered_map<int, int>& map) {
  for (int& q : input_half) q = map.at(q);
  for (int& q : output_half) q = map.at(q);
}

void Transcript::append(const Transcript& other) {
  outcomes.insert(outcomes.end(), other.outcomes.begin(), other.outcomes.end());
  byproducts.insert(byproducts.end(), other.byproducts.begin(), other.byproducts.end());
  choices.insert(choices.end(), other.choices.begin(), other.choices.end());
}

std::string Transcript::serialize() const {
  std::string out;
  for (const auto& m : outcomes) {
    out += std::to_string(m.qubit);
    out += ',';
    out += sim::basis_name(m.basis);
    out += ',';
    out += std::to_string(m.bit);
    out += '\n';
  }
  for (const auto& p : byproducts) {
    out += p.to_text();
    out += '\n';
  }
  for (int c : choices) {
    out += "choice=";
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

Transcript Transcript::deserialize(const std::string& text) {
  Transcript t;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (line.rfind("choice=", 0) == 0) {
      t.choices.push_back(std::stoi(line.substr(7)));
    } else if (line[0] == '+' || line[0] == '-') {
      t.byproducts.push_back(PauliString::from_text(line));
    } else {
      sim::MeasurementOutcome m;
      auto c1 = line.find(',');
      auto c2 = line.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw UsageError("Transcript::deserialize: bad measurement line");
      m.qubit = std::stoi(line.substr(0, c1));
      m.basis = line[c1 + 1] == 'X' ? sim::Basis::X : sim::Basis::Z;
      m.bit = std::stoi(line.substr(c2 + 1));
      t.outcomes.push_back(m);
    }
  }
  return t;
}

std::vector<std::pair<int, int>> prepare_bell_pairs(ExecutionContext& ctx, int count) {
  if (count < 1) throw UsageError("prepare_bell_pairs: count must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto q = ctx.alloc(2, "00");
    ctx.gate(Gate::H, {q[0]});
    ctx.gate(Gate::Cnot, {q[0], q[1]});
    pairs.emplace_back(q[0], q[1]);
  }
  return pairs;
}

ResourceState prepare_gate_resource(const circuit::GateSequence& u_circuit, int n,
                                    cost::LedgerRecorder* prep_recorder, bool simulate) {
  for (const auto& op : u_circuit)
    for (int q : op.qubits)
      if (q < 0 || q >= n) throw UsageError("prepare_gate_resource: circuit width mismatch");

  ResourceState res;
  res.n = n;
  Rng unused(0);  // resource preparation is measurement-free
  auto build = [&](ExecutionContext& ctx) {
    ctx.set_recorder(prep_recorder);
    auto pairs = prepare_bell_pairs(ctx, n);
    for (auto [a, b] : pairs) {
      res.input_half.push_back(a);
      res.output_half.push_back(b);
    }
    for (const auto& op : u_circuit) {
      std::vector<int> labels;
      for (int q : op.qubits) labels.push_back(res.output_half[static_cast<std::size_t>(q)]);
      ctx.gate(op.gate, labels);
    }
  };
  if (simulate) {
    ExecutionContext ctx(res.state, unused);
    build(ctx);
  } else {
    ExecutionContext ctx(unused);
    build(ctx);
  }
  return res;
}

BellBits bell_measure(ExecutionContext& ctx, std::span<const std::pair<int, int>> pairs,
                      Transcript* transcript) {
  BellBits bits;
  int i = 0;
  for (auto [control, target] : pairs) {
    ctx.gate(Gate::Cnot, {control, target});
    int z = ctx.measure(control, sim::Basis::X);
    int x = ctx.measure(target, sim::Basis::Z);
    if (x) bits.x_bits |= std::uint64_t{1} << i;
    if (z) bits.z_bits |= std::uint64_t{1} << i;
    if (transcript) {
      auto& outs = ctx.outcomes();
      transcript->outcomes.push_back(outs[outs.size() - 2]);
      transcript->outcomes.push_back(outs[outs.size() - 1]);
    }
    ++i;
  }
  return bits;
}

TeleportResult gate_teleport_in_place(ExecutionContext& ctx, std::span<const int> input,
                                      const ResourceState& resource,
                                      const pauli::CliffordTableau* u_tableau) {
  const int n = resource.n;
  if (static_cast<int>(input.size()) != n)
    throw UsageError("gate_teleport: input width does not match resource");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(input[i], resource.input_half[static_cast<std::size_t>(i)]);

  TeleportResult result;
  BellBits bits = bell_measure(ctx, pairs, &result.transcript);
  result.output = resource.output_half;
  result.byproduct = PauliString(n, bits.x_bits, bits.z_bits, 0);
  result.transcript.byproducts.push_back(result.byproduct);

  if (u_tableau) {
    if (u_tableau->n() != n) throw UsageError("gate_teleport: tableau width mismatch");
    // U P U^dag equals the needed U P^dag U^dag up to a global sign.
    PauliString correction = pauli::factorize_correction(*u_tableau, bits.x_bits, bits.z_bits);
    ctx.apply_pauli(correction.adjoint(), result.output);
  }
  return result;
}

std::pair<sim::Statevector, TeleportResult> gate_teleport(sim::Statevector input,
                                                          ResourceState resource,
                                                          const pauli::CliffordTableau* u_tableau,
                                                          Rng& rng) {
  std::vector<int> in_labels = input.live_qubits();
  auto remap = input.absorb(resource.state);
  resource.remap_labels(remap);
  ExecutionContext ctx(input, rng);
  TeleportResult r = gate_teleport_in_place(ctx, in_labels, resource, u_tableau);
  return {std::move(input), std::move(r)};
}

// ---------------------------------------------------------------------------
// Selective teleportation.
//
// Frozen outcome -> byproduct tables, indexed [choice][first bit][second bit]
// and storing the (x, z) exponents of the byproduct on the produced qubit.
// Derived once by enumerating all measurement branches of the single-qubit
// gadgets; test_gadgets re-runs that derivation against these constants.

namespace {
struct XZ {
  int x, z;
};
constexpr XZ kDestinationTable[2][2][2] = {
    // choice A: source measured Z (m1), ancilla measured X (m2): P = X^m1 Z^m2
    {{{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}},
    // choice B: source measured X (m1), ancilla measured Z (m2): P = X^m2 Z^m1
    {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}},
};
constexpr XZ kSourceTable[2][2][2] = {
    // choice A: src_a measured X (m1), src_b measured Z (m2): P = X^m2 Z^m1
    {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}},
    // choice B: src_a measured Z (m1), src_b measured X (m2): P = X^m1 Z^m2
    {{{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}},
};

int check_choice(int choice) {
  if (choice != kChoiceA && choice != kChoiceB)
    throw UsageError("selective teleportation: choice must be 0 (A) or 1 (B)");
  return choice;
}

PauliString one_qubit_byproduct(const XZ& bits) {
  return PauliString(1, static_cast<std::uint64_t>(bits.x), static_cast<std::uint64_t>(bits.z), 0);
}
}  // namespace

std::pair<int, int> destination_byproduct_bits(int choice, int m_source, int m_ancilla) {
  const XZ& e = kDestinationTable[check_choice(choice)][m_source][m_ancilla];
  return {e.x, e.z};
}

std::pair<int, int> source_byproduct_bits(int choice, int m_src_a, int m_src_b) {
  const XZ& e = kSourceTable[check_choice(choice)][m_src_a][m_src_b];
  return {e.x, e.z};
}

sim::Basis destination_basis_source(int choice) {
  return check_choice(choice) == kChoiceA ? sim::Basis::Z : sim::Basis::X;
}
sim::Basis destination_basis_ancilla(int choice) {
  return check_choice(choice) == kChoiceA ? sim::Basis::X : sim::Basis::Z;
}
sim::Basis source_basis_first(int choice) {
  return check_choice(choice) == kChoiceA ? sim::Basis::X : sim::Basis::Z;
}
sim::Basis source_basis_second(int choice) {
  return check_choice(choice) == kChoiceA ? sim::Basis::Z : sim::Basis::X;
}

SelectiveDestinationResult selective_destination_teleport(ExecutionContext& ctx, int source,
                                                          int dest_a, int dest_b, int ancilla,
                                                          int choice) {
  check_choice(choice);
  ctx.gate(Gate::Cnot, {source, ancilla});
  ctx.gate(Gate::Cnot, {dest_a, source});
  ctx.gate(Gate::Cnot, {dest_b, ancilla});
  int m1 = ctx.measure(source, destination_basis_source(choice));
  int m2 = ctx.measure(ancilla, destination_basis_ancilla(choice));

  SelectiveDestinationResult r;
  r.byproduct = one_qubit_byproduct(kDestinationTable[choice][m1][m2]);
  r.chosen = (choice == kChoiceA) ? dest_a : dest_b;
  auto& outs = ctx.outcomes();
  r.transcript.outcomes.assign(outs.end() - 2, outs.end());
  r.transcript.byproducts.push_back(r.byproduct);
  r.transcript.choices.push_back(choice);
  return r;
}

SelectiveSourceResult selective_source_teleport(ExecutionContext& ctx, int src_a, int src_b,
                                                int dest, int choice) {
  check_choice(choice);
  ctx.gate(Gate::Cnot, {src_a, dest});
  ctx.gate(Gate::Cnot, {src_b, dest});
  int m1 = ctx.measure(src_a, source_basis_first(choice));
  int m2 = ctx.measure(src_b, source_basis_second(choice));

  SelectiveSourceResult r;
  r.byproduct = one_qubit_byproduct(kSourceTable[choice][m1][m2]);
  auto& outs = ctx.outcomes();
  r.transcript.outcomes.assign(outs.end() - 2, outs.end());
  r.transcript.byproducts.push_back(r.byproduct);
  r.transcript.choices.push_back(choice);
  return r;
}

SelectiveGateResult selective_gate_teleport(ExecutionContext& ctx, std::span<const int> input,
                                            const circuit::GateSequence& u_a,
                                            const circuit::GateSequence& u_b, int choice) {
  check_choice(choice);
  const int n = static_cast<int>(input.size());
  for (const auto& seq : {&u_a, &u_b})
    for (const auto& op : *seq)
      for (int q : op.qubits)
        if (q < 0 || q >= n) throw UsageError("selective_gate_teleport: width mismatch");

  // Per input qubit: w1 = |0>, w2 = |+>, w3 = |+>, w4 = |0>.
  std::vector<int> w1, w2, w3, w4;
  for (int i = 0; i < n; ++i) {
    auto q = ctx.alloc(4, "0++0");
    w1.push_back(q[0]);
    w2.push_back(q[1]);
    w3.push_back(q[2]);
    w4.push_back(q[3]);
  }

  SelectiveGateResult result;
  result.p1 = PauliString::identity(n);
  result.p2 = PauliString::identity(n);

  // Stage 1: destination teleport each input qubit onto w2 (A) or w3 (B).
  for (int i = 0; i < n; ++i) {
    ctx.gate(Gate::Cnot, {input[i], w1[static_cast<std::size_t>(i)]});
    ctx.gate(Gate::Cnot, {w2[static_cast<std::size_t>(i)], input[i]});
    ctx.gate(Gate::Cnot, {w3[static_cast<std::size_t>(i)], w1[static_cast<std::size_t>(i)]});
  }
  for (int i = 0; i < n; ++i) {
    int m1 = ctx.measure(input[i], destination_basis_source(choice));
    int m2 = ctx.measure(w1[static_cast<std::size_t>(i)], destination_basis_ancilla(choice));
    const XZ& e = kDestinationTable[choice][m1][m2];
    if (e.x) result.p2.x_bits |= std::uint64_t{1} << i;
    if (e.z) result.p2.z_bits |= std::uint64_t{1} << i;
  }

  // Stage 2: the candidate unitaries act on their own registers.
  for (const auto& op : u_a) {
    std::vector<int> labels;
    for (int q : op.qubits) labels.push_back(w2[static_cast<std::size_t>(q)]);
    ctx.gate(op.gate, labels);
  }
  for (const auto& op : u_b) {
    std::vector<int> labels;
    for (int q : op.qubits) labels.push_back(w3[static_cast<std::size_t>(q)]);
    ctx.gate(op.gate, labels);
  }

  // Stage 3: source teleport w2 (A) or w3 (B) onto w4.
  for (int i = 0; i < n; ++i) {
    ctx.gate(Gate::Cnot, {w2[static_cast<std::size_t>(i)], w4[static_cast<std::size_t>(i)]});
    ctx.gate(Gate::Cnot, {w3[static_cast<std::size_t>(i)], w4[static_cast<std::size_t>(i)]});
  }
  for (int i = 0; i < n; ++i) {
    int m1 = ctx.measure(w2[static_cast<std::size_t>(i)], source_basis_first(choice));
    int m2 = ctx.measure(w3[static_cast<std::size_t>(i)], source_basis_second(choice));
    const XZ& e = kSourceTable[choice][m1][m2];
    if (e.x) result.p1.x_bits |= std::uint64_t{1} << i;
    if (e.z) result.p1.z_bits |= std::uint64_t{1} << i;
  }

  result.output = w4;
  auto& outs = ctx.outcomes();
  result.transcript.outcomes.assign(outs.end() - 4 * n, outs.end());
  result.transcript.byproducts.push_back(result.p2);
  result.transcript.byproducts.push_back(result.p1);
  result.transcript.choices.push_back(choice);
  return result;
}

}  // namespace teleprep::teleport
