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
#include <vector>

#include "teleprep/circuit/circuit.hpp"
#include "teleprep/pauli/pauli_string.hpp"

namespace teleprep::pauli {

/// Symplectic description of a Clifford unitary U: the images U X_i U^dag and
/// U Z_i U^dag for every generator, phases included.
class CliffordTableau {
 public:
  explicit CliffordTableau(int n);

  static CliffordTableau identity(int n) { return CliffordTableau(n); }
  /// Images of the unitary implemented by the gate sequence (gates applied in
  /// list order). Throws UsageError on a non-Clifford gate.
  static CliffordTableau from_circuit(const circuit::GateSequence& gates, int n);

  int n() const { return n_; }
  const PauliString& x_image(int i) const { return x_images_[static_cast<std::size_t>(i)]; }
  const PauliString& z_image(int i) const { return z_images_[static_cast<std::size_t>(i)]; }

  /// U p U^dag, assembled from the stored generator images.
  PauliString conjugate(const PauliString& p) const;

  /// Appends one more gate to the represented circuit: every stored image is
  /// conjugated by it.
  void append_gate(circuit::Gate g, std::span<const int> targets);

  /// Checks the symplectic commutation relations of the images.
  bool is_valid() const;

 private:
  int n_;
  std::vector<PauliString> x_images_;
  std::vector<PauliString> z_images_;
};

/// In-place conjugation of p by a single Clifford gate, phase-exact under the
/// Y = i*X*Z convention.
void conjugate_by_gate(PauliString& p, circuit::Gate g, std::span<const int> targets);

/// The factorized byproduct correction: with x/z the bell-measurement bit
/// masks, returns  prod_i (U X_i U^dag)^{x_i} * prod_i (U Z_i U^dag)^{z_i},
/// i.e. U (X^x Z^z) U^dag computed from the precomputed images alone.
PauliString factorize_correction(const CliffordTableau& t, std::uint64_t x_bits,
                                 std::uint64_t z_bits);

}  // namespace teleprep::pauli
