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

#include <catch2/catch_amalgamated.hpp>

#include "oracles/dense.hpp"
#include "teleprep/common/errors.hpp"
#include "teleprep/pauli/clifford_tableau.hpp"
#include "teleprep/pauli/pauli_string.hpp"

using teleprep::Rng;
using teleprep::UsageError;
using teleprep::circuit::Gate;
using teleprep::pauli::CliffordTableau;
using teleprep::pauli::factorize_correction;
using teleprep::pauli::pauli_multiply;
using teleprep::pauli::PauliString;

namespace {
PauliString random_pauli(int n, Rng& rng) {
  const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return PauliString(n, rng.next_u64() & mask, rng.next_u64() & mask,
                     static_cast<int>(rng.next_index(4)));
}
}  // namespace

TEST_CASE("pauli product phases follow the X-left-of-Z convention") {
  PauliString x = PauliString::single_x(1, 0);
  PauliString z = PauliString::single_z(1, 0);

  PauliString xx = pauli_multiply(x, x);
  REQUIRE(xx.is_identity_up_to_phase());
  REQUIRE(xx.phase_pow == 0);

  // X * Z = -i Y in the Y = i X Z convention.
  PauliString xz = pauli_multiply(x, z);
  PauliString y = PauliString::single_y(1, 0);
  REQUIRE(oracle::matrix_distance(oracle::pauli_matrix(xz),
                                  std::complex<double>(0, -1) * oracle::pauli_matrix(y)) < 1e-15);

  // Disjoint support: (X ox I) * (I ox Z) = X ox Z with phase +1.
  PauliString a = PauliString::single_x(2, 0);
  PauliString b = PauliString::single_z(2, 1);
  PauliString ab = pauli_multiply(a, b);
  REQUIRE(ab.phase_pow == 0);
  REQUIRE(ab.x(0));
  REQUIRE(ab.z(1));

  REQUIRE_THROWS_AS(pauli_multiply(x, a), UsageError);
}

TEST_CASE("pauli product matches the dense matrix product") {
  Rng rng(777);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3;
    PauliString a = random_pauli(n, rng);
    PauliString b = random_pauli(n, rng);
    oracle::Mat expected = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
    REQUIRE(oracle::matrix_distance(oracle::pauli_matrix(pauli_multiply(a, b)), expected) < 1e-13);
  }
}

TEST_CASE("adjoint and commutation agree with matrices") {
  Rng rng(888);
  for (int rep = 0; rep < 50; ++rep) {
    PauliString a = random_pauli(2, rng);
    PauliString b = random_pauli(2, rng);
    REQUIRE(oracle::matrix_distance(oracle::pauli_matrix(a.adjoint()),
                                    oracle::pauli_matrix(a).adjoint()) < 1e-13);
    oracle::Mat ab = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
    oracle::Mat ba = oracle::pauli_matrix(b) * oracle::pauli_matrix(a);
    REQUIRE(a.commutes_with(b) == (oracle::matrix_distance(ab, ba) < 1e-13));
  }
}

TEST_CASE("single-gate tableaus match 2x2 and 4x4 conjugation oracles") {
  // H: X -> Z, Z -> X.
  CliffordTableau h = CliffordTableau::from_circuit({teleprep::circuit::CircuitOp::make_gate(Gate::H, {0})}, 1);
  REQUIRE(h.x_image(0) == PauliString::single_z(1, 0));
  REQUIRE(h.z_image(0) == PauliString::single_x(1, 0));

  // S: X -> Y (phase-tracked), Z -> Z.
  CliffordTableau s = CliffordTableau::from_circuit({teleprep::circuit::CircuitOp::make_gate(Gate::S, {0})}, 1);
  REQUIRE(s.x_image(0) == PauliString::single_y(1, 0));
  REQUIRE(s.z_image(0) == PauliString::single_z(1, 0));

  // CNOT: X ox I -> X ox X, I ox Z -> Z ox Z.
  CliffordTableau cx =
      CliffordTableau::from_circuit({teleprep::circuit::CircuitOp::make_gate(Gate::Cnot, {0, 1})}, 2);
  REQUIRE(cx.x_image(0) == PauliString(2, 0b11, 0, 0));
  REQUIRE(cx.z_image(1) == PauliString(2, 0, 0b11, 0));
  REQUIRE(cx.z_image(0) == PauliString::single_z(2, 0));

  REQUIRE_THROWS_AS(
      CliffordTableau::from_circuit({teleprep::circuit::CircuitOp::make_gate(Gate::T, {0})}, 1),
      UsageError);
}

TEST_CASE("tableau conjugation matches dense conjugation on random circuits") {
  Rng rng(24601);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 1 + static_cast<int>(rng.next_index(4));
    const int len = static_cast<int>(rng.next_index(41));
    auto gates = teleprep::circuit::random_clifford_circuit(n, len, rng);
    CliffordTableau t = CliffordTableau::from_circuit(gates, n);
    REQUIRE(t.is_valid());
    PauliString p = random_pauli(n, rng);
    PauliString image = t.conjugate(p);

    oracle::Mat u = oracle::circuit_unitary(gates, n);
    oracle::Mat expected = u * oracle::pauli_matrix(p) * u.adjoint();
    REQUIRE(oracle::matrix_distance(oracle::pauli_matrix(image), expected) < 1e-11);
  }
}

TEST_CASE("identity tableau conjugation is the identity map") {
  Rng rng(1);
  CliffordTableau t = CliffordTableau::identity(3);
  for (int rep = 0; rep < 10; ++rep) {
    PauliString p = random_pauli(3, rng);
    REQUIRE(t.conjugate(p) == p);
  }
}

TEST_CASE("factorized corrections agree with assembled-byproduct conjugation") {
  // All-zero bits give the identity.
  CliffordTableau id3 = CliffordTableau::identity(3);
  REQUIRE(factorize_correction(id3, 0, 0) == PauliString::identity(3));

  // H tableau, x = 1: U X U^dag = Z.
  CliffordTableau h = CliffordTableau::from_circuit({teleprep::circuit::CircuitOp::make_gate(Gate::H, {0})}, 1);
  REQUIRE(factorize_correction(h, 1, 0) == PauliString::single_z(1, 0));

  // Exhaustive at n = 2 over all bit patterns for a random tableau.
  Rng rng(5150);
  auto gates = teleprep::circuit::random_clifford_circuit(2, 25, rng);
  CliffordTableau t = CliffordTableau::from_circuit(gates, 2);
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t z = 0; z < 4; ++z) {
      PauliString byproduct(2, x, z, 0);
      REQUIRE(factorize_correction(t, x, z) == t.conjugate(byproduct));
    }

  // Random patterns at n = 4, against the dense oracle.
  for (int rep = 0; rep < 100; ++rep) {
    auto g4 = teleprep::circuit::random_clifford_circuit(4, 30, rng);
    CliffordTableau t4 = CliffordTableau::from_circuit(g4, 4);
    std::uint64_t x = rng.next_index(16);
    std::uint64_t z = rng.next_index(16);
    oracle::Mat u = oracle::circuit_unitary(g4, 4);
    oracle::Mat expected = u * oracle::pauli_matrix(PauliString(4, x, z, 0)) * u.adjoint();
    REQUIRE(oracle::matrix_distance(oracle::pauli_matrix(factorize_correction(t4, x, z)),
                                    expected) < 1e-11);
  }
}

TEST_CASE("pauli text form round-trips") {
  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    PauliString p = random_pauli(1 + static_cast<int>(rng.next_index(6)), rng);
    REQUIRE(PauliString::from_text(p.to_text()) == p);
  }
  REQUIRE(PauliString::from_text("+;10;01").x(0));
  REQUIRE(PauliString::from_text("+;10;01").z(1));
  REQUIRE_THROWS_AS(PauliString::from_text("nonsense"), UsageError);
}
