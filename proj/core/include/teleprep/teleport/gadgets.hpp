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
#include <utility>

#include "teleprep/pauli/clifford_tableau.hpp"
#include "teleprep/pauli/pauli_string.hpp"
#include "teleprep/teleport/context.hpp"

namespace teleprep::teleport {

/// A 2n-qubit entangled resource: n bell pairs with the teleported unitary
/// already applied to the output halves.
struct ResourceState {
  sim::Statevector state;
  int n = 0;
  std::vector<int> input_half;
  std::vector<int> output_half;
  std::string unitary_tag;

  void remap_labels(const std::unordered_map<int, int>& map);
};

/// Classical record of a gadget run: measurement outcomes in execution order,
/// the byproducts inferred from them, and any selection bits.
struct Transcript {
  std::vector<sim::MeasurementOutcome> outcomes;
  std::vector<pauli::PauliString> byproducts;
  std::vector<int> choices;

  void append(const Transcript& other);

  /// Line-oriented text: `qubit,basis,bit` per measurement, the PauliString
  /// text form per byproduct, `choice=<bit>` per selection bit.
  std::string serialize() const;
  static Transcript deserialize(const std::string& text);
};

/// Allocates `count` bell pairs (|00>+|11>)/sqrt(2); returns (a, b) labels.
std::vector<std::pair<int, int>> prepare_bell_pairs(ExecutionContext& ctx, int count);

/// |Gamma(U)> for a circuit-specified unitary: n bell pairs, U applied across
/// the output halves. Gates are charged to `prep_recorder` when given. With
/// simulate=false only labels and ledger entries are produced (no state).
ResourceState prepare_gate_resource(const circuit::GateSequence& u_circuit, int n,
                                    cost::LedgerRecorder* prep_recorder = nullptr,
                                    bool simulate = true);

/// Bell-basis measurement of each (control, target) pair: CNOT, then an
/// X-basis measurement of the control and a Z-basis measurement of the
/// target. Bit i of x_bits is the target's Z outcome, bit i of z_bits the
/// control's X outcome, so the byproduct on the teleported register is
/// X^x Z^z.
struct BellBits {
  std::uint64_t x_bits = 0;
  std::uint64_t z_bits = 0;
};
BellBits bell_measure(ExecutionContext& ctx, std::span<const std::pair<int, int>> pairs,
                      Transcript* transcript = nullptr);

/// Consumes `resource` (already absorbed into ctx's state) against the input
/// register. Without a tableau the output is U P |psi> and P is reported;
/// with one, the factorized correction U P U^dag is applied so the output is
/// U |psi> up to global phase.
struct TeleportResult {
  std::vector<int> output;
  pauli::PauliString byproduct;
  Transcript transcript;
};
TeleportResult gate_teleport_in_place(ExecutionContext& ctx, std::span<const int> input,
                                      const ResourceState& resource,
                                      const pauli::CliffordTableau* u_tableau);

/// Statevector-level convenience wrapper; returns the post-teleport state.
std::pair<sim::Statevector, TeleportResult> gate_teleport(sim::Statevector input,
                                                          ResourceState resource,
                                                          const pauli::CliffordTableau* u_tableau,
                                                          Rng& rng);

// ---------------------------------------------------------------------------
// Selective teleportation. Choices select measurement bases only; the wiring
// is identical for both settings. The outcome -> byproduct maps below were
// frozen from an exhaustive single-qubit branch enumeration, which the test
// suite re-derives.

inline constexpr int kChoiceA = 0;
inline constexpr int kChoiceB = 1;

/// Per-qubit byproduct (x_bit, z_bit) of destination teleportation given
/// (choice, source outcome, ancilla outcome).
std::pair<int, int> destination_byproduct_bits(int choice, int m_source, int m_ancilla);
/// Per-qubit byproduct of source teleportation given (choice, first source
/// outcome, second source outcome).
std::pair<int, int> source_byproduct_bits(int choice, int m_src_a, int m_src_b);

/// Measurement bases per wire for the two settings (locality check hook).
sim::Basis destination_basis_source(int choice);
sim::Basis destination_basis_ancilla(int choice);
sim::Basis source_basis_first(int choice);
sim::Basis source_basis_second(int choice);

/// Teleports `source` onto destA (choice A) or destB (choice B).
/// Preconditions: ancilla in |0>, both destinations in |+>. Applies the drawn
/// CNOT pattern, measures source and ancilla in the setting's bases, and
/// returns the byproduct on the chosen destination.
struct SelectiveDestinationResult {
  pauli::PauliString byproduct;  // 1-qubit
  int chosen = -1;
  Transcript transcript;
};
SelectiveDestinationResult selective_destination_teleport(ExecutionContext& ctx, int source,
                                                          int dest_a, int dest_b, int ancilla,
                                                          int choice);

/// Teleports src_a (choice A) or src_b (choice B) onto `dest` (precondition:
/// dest in |0>). The unchosen source is consumed by its measurement.
struct SelectiveSourceResult {
  pauli::PauliString byproduct;  // 1-qubit
  Transcript transcript;
};
SelectiveSourceResult selective_source_teleport(ExecutionContext& ctx, int src_a, int src_b,
                                                int dest, int choice);

/// Full selective gate teleportation on an n-qubit register: per input qubit
/// a (w1..w4) ancilla column, destination teleport onto the w2/w3 registers,
/// u_a applied to w2 and u_b to w3, source teleport onto w4. Output register
/// holds P1 * U_chosen * P2 |psi>.
struct SelectiveGateResult {
  std::vector<int> output;
  pauli::PauliString p1;  // after the chosen unitary
  pauli::PauliString p2;  // before the chosen unitary
  Transcript transcript;
};
SelectiveGateResult selective_gate_teleport(ExecutionContext& ctx, std::span<const int> input,
                                            const circuit::GateSequence& u_a,
                                            const circuit::GateSequence& u_b, int choice);

}  // namespace teleprep::teleport
