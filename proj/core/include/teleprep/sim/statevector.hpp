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

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "teleprep/circuit/circuit.hpp"
#include "teleprep/common/rng.hpp"
#include "teleprep/pauli/pauli_string.hpp"

namespace teleprep::sim {

enum class Basis : std::uint8_t { X, Z };

inline char basis_name(Basis b) { return b == Basis::X ? 'X' : 'Z'; }

struct MeasurementOutcome {
  int qubit = -1;
  Basis basis = Basis::Z;
  int bit = 0;
};

/// Exact statevector with dynamic qubit allocation and eager recycling.
///
/// Conventions:
///  - live_qubits() order defines the tensor order; the qubit at position 0
///    is the most significant bit of the amplitude index.
///  - Measuring removes the qubit from the state (the amplitude vector halves)
///    unless keep_measured mode is enabled for reference cross-checks.
///  - An X-basis measurement is realized as H followed by a Z-basis
///    measurement of the same qubit.
///  - A global phase is tracked separately and ignored by the phase-blind
///    comparison helpers.
class Statevector {
 public:
  using Amplitude = std::complex<double>;

  Statevector() : amps_(1, Amplitude{1.0, 0.0}) {}

  /// A state with explicit amplitudes over n fresh qubits (normalized here).
  static Statevector from_amplitudes(int n, std::vector<Amplitude> amps);

  /// Appends `count` fresh qubits, each prepared per the corresponding
  /// character of `initial` ('0' or '+'). Returns the new labels in order
  /// (first label = most significant of the new block).
  std::vector<int> allocate(int count, std::string_view initial);

  void apply_gate(circuit::Gate g, std::span<const int> targets);
  void apply_gate(circuit::Gate g, std::initializer_list<int> targets) {
    apply_gate(g, std::span<const int>(targets.begin(), targets.size()));
  }

  /// Multi-controlled Z: flips the sign of every basis state in which all
  /// target qubits read 1. A single target reduces to Z, a pair to CZ.
  void apply_mcz(std::span<const int> targets);
  void apply_mcz(std::initializer_list<int> targets) {
    apply_mcz(std::span<const int>(targets.begin(), targets.size()));
  }

  /// Applies phase * X^x Z^z with qubit q of `p` acting on labels[q].
  /// The operator's overall phase goes to the tracked global phase.
  void apply_pauli(const pauli::PauliString& p, std::span<const int> labels);

  /// Born-rule measurement; collapses, renormalizes and recycles the qubit.
  MeasurementOutcome measure(int qubit, Basis basis, Rng& rng);

  /// Forces the given outcome branch (for exhaustive branch enumeration).
  /// Returns the probability of that branch; throws if it is (numerically)
  /// impossible.
  double postselect(int qubit, Basis basis, int bit);

  /// Removes a qubit that is deterministically |0> (e.g. a restored ancilla).
  void discard_zero(int qubit, double tol = 1e-9);

  /// Tensors `other` onto the less significant side of this state. The
  /// absorbed qubits get fresh labels here; the returned map gives
  /// old-label -> new-label.
  std::unordered_map<int, int> absorb(const Statevector& other);

  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  const std::vector<int>& live_qubits() const { return qubits_; }
  bool is_live(int qubit) const;
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude global_phase() const { return global_phase_; }
  void multiply_global_phase(Amplitude unit) { global_phase_ *= unit; }

  double norm() const;
  /// Probability that `qubit` would read 1 in a Z measurement.
  double probability_one(int qubit) const;

  void set_keep_measured(bool keep) { keep_measured_ = keep; }

  /// |<a|b>| for states over the same label set (order may differ). The
  /// tracked global phases are ignored.
  static double overlap_magnitude(const Statevector& a, const Statevector& b);
  /// Trace distance between the two pure states: sqrt(1 - |<a|b>|^2).
  static double trace_distance(const Statevector& a, const Statevector& b);

  int position_of(int qubit) const;  // tensor position, throws if not live

 private:
  int bitpos_of(int qubit) const;  // bit position in the amplitude index
  void collapse_and_remove(int qubit, int bit, double prob);

  std::vector<Amplitude> amps_;
  std::vector<int> qubits_;
  Amplitude global_phase_{1.0, 0.0};
  int next_label_ = 0;
  bool keep_measured_ = false;
};

}  // namespace teleprep::sim
