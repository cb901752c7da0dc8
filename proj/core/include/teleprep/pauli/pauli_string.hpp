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
#include <string>

namespace teleprep::pauli {

/// Signed n-qubit Pauli operator in symplectic form.
///
/// The represented operator is
///
///     i^phase_pow * (X^x) * (Z^z)
///
/// where bit q of the x/z masks refers to qubit q and all X factors stand to
/// the left of all Z factors. The project-wide phase convention is Y = i*X*Z,
/// so a qubit with both bits set reads as Y once a factor of -i is absorbed
/// into the phase.
struct PauliString {
  static constexpr int kMaxQubits = 64;

  int n = 0;
  std::uint64_t x_bits = 0;
  std::uint64_t z_bits = 0;
  int phase_pow = 0;  // exponent of i, kept in [0, 4)

  PauliString() = default;
  PauliString(int n_, std::uint64_t x, std::uint64_t z, int phase = 0);

  static PauliString identity(int n) { return PauliString(n, 0, 0, 0); }
  static PauliString single_x(int n, int qubit);
  static PauliString single_z(int n, int qubit);
  static PauliString single_y(int n, int qubit);
  /// X on every qubit in `mask`.
  static PauliString x_product(int n, std::uint64_t mask) { return PauliString(n, mask, 0, 0); }

  bool x(int qubit) const { return (x_bits >> qubit) & 1u; }
  bool z(int qubit) const { return (z_bits >> qubit) & 1u; }
  bool is_identity_up_to_phase() const { return x_bits == 0 && z_bits == 0; }

  std::complex<double> phase() const;
  PauliString adjoint() const;

  bool operator==(const PauliString& other) const = default;
  bool equal_up_to_phase(const PauliString& other) const {
    return n == other.n && x_bits == other.x_bits && z_bits == other.z_bits;
  }
  bool commutes_with(const PauliString& other) const;

  /// Compact transcript form: phase token, then the X and Z bit strings with
  /// character position q giving the bit of qubit q, e.g. "+;10;01".
  std::string to_text() const;
  static PauliString from_text(const std::string& text);

  /// Human-readable letter form under Y = i*X*Z, e.g. "-i * XYZ".
  std::string to_letters() const;
};

/// Group product a*b with the phase produced by reordering the Z factors of a
/// past the X factors of b.
PauliString pauli_multiply(const PauliString& a, const PauliString& b);

}  // namespace teleprep::pauli
