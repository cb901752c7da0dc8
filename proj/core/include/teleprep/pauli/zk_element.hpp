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
#include <string>
#include <tuple>
#include <vector>

#include "teleprep/common/rng.hpp"
#include "teleprep/pauli/pauli_string.hpp"

namespace teleprep::pauli {

/// Element of the group generated by +/-I, Z, and multi-controlled Z gates
/// with at most k-1 controls: a sign together with a set of GF(2) monomials.
///
/// The element acts diagonally: on basis state b it contributes
///     sign * prod_{S in monomials} (-1)^{AND of the bits of b over S}.
/// Monomials are stored as bit masks (bit q = qubit q), kept sorted,
/// unique and nonempty; every element is its own inverse.
struct ZkElement {
  int n = 0;
  int k = 0;  // declared level bound; actual level may be lower
  bool negative = false;
  std::vector<std::uint64_t> monomials;  // sorted ascending by mask

  static ZkElement identity(int n, int k = 0) { return ZkElement{n, k, false, {}}; }
  /// Canonicalizes (sorts, drops duplicate pairs) and validates sizes <= k.
  static ZkElement make(int n, int k, bool negative, std::vector<std::uint64_t> monomials);

  bool is_identity() const { return !negative && monomials.empty(); }
  bool is_sign_only() const { return monomials.empty(); }
  bool contains(std::uint64_t monomial) const;

  bool operator==(const ZkElement& other) const {
    return n == other.n && negative == other.negative && monomials == other.monomials;
  }

  /// Transcript form: sign token, then semicolon-separated sorted monomials
  /// as comma-joined qubit indices, e.g. "+;0;1,2" for Z_0 * CZ_{1,2}.
  /// The text does not carry n; pass it explicitly or let it be inferred
  /// from the highest mentioned qubit.
  std::string to_text() const;
  static ZkElement from_text(const std::string& text, int n = -1);

  /// Bit-packed form: one sign bit plus one presence bit for every possible
  /// monomial of size 1..k, so the payload is exactly sum_{j=0}^{k} C(n,j)
  /// bits. Mostly used to pin down the representation-size bound.
  std::vector<std::uint8_t> pack() const;
  static ZkElement unpack(int n, int k, const std::vector<std::uint8_t>& bytes);
  static std::uint64_t packed_bit_count(int n, int k);
};

/// Largest monomial size (0 for pure sign elements).
int zk_level(const ZkElement& g);

/// Group product: symmetric difference of the monomial sets, signs multiply.
/// When `xor_ops` is given it is incremented by the number of monomials
/// touched by the merge.
ZkElement zk_multiply(const ZkElement& a, const ZkElement& b, std::uint64_t* xor_ops = nullptr);

/// G' = X_s G X_s G^dag, one level down the hierarchy. Computed by iterated
/// single-qubit shifts: a shift by X_i rewrites every monomial S containing i
/// as S plus S\{i} (a sign flip when S = {i}); multiplying by G afterwards
/// leaves exactly the discrete derivative. `s_mask` selects the qubits of s.
ZkElement zk_conjugate_by_x(const ZkElement& g, std::uint64_t s_mask,
                            std::uint64_t* xor_ops = nullptr);

/// The commutation corollary G X_s = X_s G' G, returned as (X_s, G', G).
std::tuple<PauliString, ZkElement, ZkElement> zk_commute_x_left(const ZkElement& g,
                                                                std::uint64_t s_mask);

/// Multi-controlled-Z transcription of a diagonal element. The global sign
/// cannot be realized by the gates and is recorded alongside.
struct DiagonalCircuit {
  int n = 0;
  bool negative = false;
  std::vector<std::vector<int>> mcz_terms;  // each term: sorted target indices
};
DiagonalCircuit zk_to_circuit(const ZkElement& g);

/// Dense diagonal (+1/-1 entries, length 2^n) for oracle checks; qubit q reads
/// bit (n-1-q) of the basis index, matching the statevector convention.
/// Guarded to n <= 12.
std::vector<int> zk_to_matrix(const ZkElement& g);

/// Every candidate monomial of size <= k included independently with
/// probability 1/2; sign uniform.
ZkElement random_zk(int n, int k, Rng& rng);

/// All monomial masks over n qubits with 1 <= popcount <= max_size, in the
/// canonical order (ascending size, then ascending mask).
std::vector<std::uint64_t> enumerate_monomials(int n, int max_size);

}  // namespace teleprep::pauli
