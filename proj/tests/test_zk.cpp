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

#include <bit>
#include <catch2/catch_amalgamated.hpp>

#include "oracles/dense.hpp"
#include "teleprep/common/errors.hpp"
#include "teleprep/pauli/zk_element.hpp"
#include "teleprep/sim/statevector.hpp"

using teleprep::Rng;
using teleprep::UsageError;
using teleprep::pauli::enumerate_monomials;
using teleprep::pauli::random_zk;
using teleprep::pauli::zk_commute_x_left;
using teleprep::pauli::zk_conjugate_by_x;
using teleprep::pauli::zk_level;
using teleprep::pauli::zk_multiply;
using teleprep::pauli::zk_to_circuit;
using teleprep::pauli::zk_to_matrix;
using teleprep::pauli::ZkElement;

namespace {

ZkElement cz01(int n) { return ZkElement::make(n, 2, false, {0b11}); }

/// Dense diagonal of g as an Eigen vector (oracle side uses zk_to_matrix,
/// which is itself checked against first principles here).
oracle::Vec diag_vec(const ZkElement& g) {
  auto d = zk_to_matrix(g);
  oracle::Vec v(static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) v(static_cast<Eigen::Index>(i)) = d[i];
  return v;
}

/// X_s as a permutation of basis indices (qubit q = bit n-1-q).
std::size_t apply_xs(std::size_t b, std::uint64_t s_mask, int n) {
  for (int q = 0; q < n; ++q)
    if ((s_mask >> q) & 1u) b ^= std::size_t{1} << (n - 1 - q);
  return b;
}

}  // namespace

TEST_CASE("zk_to_matrix on the basic generators") {
  REQUIRE(zk_to_matrix(ZkElement::identity(1)) == std::vector<int>{1, 1});
  REQUIRE(zk_to_matrix(ZkElement::make(1, 1, false, {0b1})) == std::vector<int>{1, -1});
  REQUIRE(zk_to_matrix(cz01(2)) == std::vector<int>{1, 1, 1, -1});
  REQUIRE_NOTHROW(zk_to_matrix(ZkElement::make(12, 1, false, {0b1})));
  REQUIRE_THROWS_AS(zk_to_matrix(ZkElement::make(13, 1, false, {0b1})), UsageError);
}

TEST_CASE("zk_multiply implements the self-inverse abelian group") {
  Rng rng(808);
  // Self-inverse: g*g = identity.
  for (int rep = 0; rep < 50; ++rep) {
    ZkElement g = random_zk(4, 3, rng);
    REQUIRE(zk_multiply(g, g).is_identity());
  }
  // Z_0 * CZ_{0,1} keeps both monomials.
  ZkElement z0 = ZkElement::make(2, 1, false, {0b01});
  ZkElement both = zk_multiply(z0, cz01(2));
  REQUIRE(both.monomials == std::vector<std::uint64_t>{0b01, 0b11});
  REQUIRE_FALSE(both.negative);
  // Sign arithmetic: (-I)(-I) = +I.
  ZkElement minus = ZkElement::make(2, 0, true, {});
  REQUIRE(zk_multiply(minus, minus).is_identity());
  // Closure + associativity on random triples via canonical equality.
  for (int rep = 0; rep < 100; ++rep) {
    ZkElement a = random_zk(4, 3, rng), b = random_zk(4, 3, rng), c = random_zk(4, 3, rng);
    REQUIRE(zk_multiply(zk_multiply(a, b), c) == zk_multiply(a, zk_multiply(b, c)));
    REQUIRE(zk_level(zk_multiply(a, b)) <= 3);
  }
  // Commutativity (diagonal group is abelian).
  for (int rep = 0; rep < 50; ++rep) {
    ZkElement a = random_zk(3, 2, rng), b = random_zk(3, 2, rng);
    REQUIRE(zk_multiply(a, b) == zk_multiply(b, a));
  }
  REQUIRE_THROWS_AS(zk_multiply(random_zk(2, 1, rng), random_zk(3, 1, rng)), UsageError);
}

TEST_CASE("zk_multiply matches the dense diagonal product") {
  Rng rng(909);
  for (int rep = 0; rep < 50; ++rep) {
    ZkElement a = random_zk(3, 3, rng), b = random_zk(3, 3, rng);
    oracle::Vec expected = diag_vec(a).cwiseProduct(diag_vec(b));
    REQUIRE((diag_vec(zk_multiply(a, b)) - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("zk_level reports the largest monomial") {
  REQUIRE(zk_level(ZkElement::identity(3)) == 0);
  REQUIRE(zk_level(ZkElement::make(3, 2, false, {0b001, 0b110})) == 2);
  REQUIRE(zk_level(ZkElement::make(3, 3, false, {0b111})) == 3);
}

TEST_CASE("conjugation by X drops one level with the right elements") {
  // CZ_{0,1} conjugated on qubit 0 gives Z_1.
  ZkElement g1 = zk_conjugate_by_x(cz01(2), 0b01);
  REQUIRE(g1 == ZkElement::make(2, 1, false, {0b10}));
  // Z_0 conjugated on qubit 0 gives -I.
  ZkElement g2 = zk_conjugate_by_x(ZkElement::make(1, 1, false, {0b1}), 0b1);
  REQUIRE(g2.is_sign_only());
  REQUIRE(g2.negative);
  // CCZ_{0,1,2} conjugated on qubit 0 gives CZ_{1,2}.
  ZkElement ccz = ZkElement::make(3, 3, false, {0b111});
  REQUIRE(zk_conjugate_by_x(ccz, 0b001) == ZkElement::make(3, 2, false, {0b110}));
}

TEST_CASE("proposition identities hold densely and the level always drops") {
  Rng rng(1234);
  int dense_checked = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_index(4));  // 2..5
    const int k = 1 + static_cast<int>(rng.next_index(std::min(n, 4)));
    ZkElement g = random_zk(n, k, rng);
    const std::uint64_t s = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
    ZkElement gp = zk_conjugate_by_x(g, s);

    // Membership: level(G') <= k-1, and G' = +/-I when k <= 1.
    REQUIRE(zk_level(gp) <= std::max(0, k - 1));
    if (k <= 1) REQUIRE(gp.is_sign_only());

    if (n <= 4) {
      ++dense_checked;
      const int dim = 1 << n;
      oracle::Vec dg = diag_vec(g), dgp = diag_vec(gp);
      for (int b = 0; b < dim; ++b) {
        const auto bs = apply_xs(static_cast<std::size_t>(b), s, n);
        // X_s G X_s G^dag = G' entrywise on the diagonal.
        const double lhs = dg(static_cast<Eigen::Index>(bs)).real() * dg(b).real();
        REQUIRE(std::abs(lhs - dgp(b).real()) < 1e-12);
        // G X_s = X_s G' G: compare the (b xor s, b) entries.
        const double left = dg(static_cast<Eigen::Index>(bs)).real();
        const double right = dgp(b).real() * dg(b).real();
        REQUIRE(std::abs(left - right) < 1e-12);
      }
    }
  }
  REQUIRE(dense_checked > 200);
}

TEST_CASE("zk_commute_x_left returns the corollary triple as matrices") {
  // Identity element: (X_s, I, I).
  auto [xs, gp, g] = zk_commute_x_left(ZkElement::identity(3), 0b101);
  REQUIRE(xs.x_bits == 0b101u);
  REQUIRE(gp.is_identity());
  REQUIRE(g.is_identity());

  // CZ{0,1} with s = {0}: CZ*X_0 = X_0*Z_1*CZ as dense 4x4 matrices.
  auto [xs2, gp2, g2] = zk_commute_x_left(cz01(2), 0b01);
  oracle::Mat cz = oracle::mcz_matrix({0, 1}, 2);
  oracle::Mat x0 = oracle::pauli_matrix(teleprep::pauli::PauliString(2, 0b01, 0, 0));
  oracle::Mat z1 = diag_vec(gp2).asDiagonal();
  REQUIRE(oracle::matrix_distance(cz * x0, x0 * z1 * cz) < 1e-14);
  REQUIRE(gp2 == ZkElement::make(2, 1, false, {0b10}));
  REQUIRE(g2 == cz01(2));

  // Random property check at n = 3.
  Rng rng(31415);
  for (int rep = 0; rep < 200; ++rep) {
    ZkElement e = random_zk(3, 3, rng);
    std::uint64_t s = rng.next_u64() & 0b111;
    auto [xsr, epr, er] = zk_commute_x_left(e, s);
    oracle::Mat left = Eigen::MatrixXcd(diag_vec(er).asDiagonal()) * oracle::pauli_matrix(xsr);
    oracle::Mat right = oracle::pauli_matrix(xsr) *
                        Eigen::MatrixXcd(diag_vec(epr).asDiagonal()) *
                        Eigen::MatrixXcd(diag_vec(er).asDiagonal());
    REQUIRE(oracle::matrix_distance(left, right) < 1e-12);
  }
}

TEST_CASE("zk_to_circuit transcribes monomials and reproduces the diagonal") {
  REQUIRE(zk_to_circuit(ZkElement::identity(2)).mcz_terms.empty());

  auto c = zk_to_circuit(cz01(2));
  REQUIRE(c.mcz_terms == std::vector<std::vector<int>>{{0, 1}});

  // {Z_0, CCZ_{0,1,2}}: applying the terms via apply_mcz reproduces the
  // element's action up to the recorded sign (8x8 diagonal comparison).
  Rng rng(54321);
  for (int rep = 0; rep < 30; ++rep) {
    ZkElement g = random_zk(3, 3, rng);
    auto circ = zk_to_circuit(g);
    teleprep::sim::Statevector sv;
    auto q = sv.allocate(3, "+++");
    for (const auto& term : circ.mcz_terms) {
      std::vector<int> labels;
      for (int idx : term) labels.push_back(q[static_cast<std::size_t>(idx)]);
      sv.apply_mcz(labels);
    }
    auto d = zk_to_matrix(g);
    const double sign = circ.negative ? -1.0 : 1.0;
    for (std::size_t b = 0; b < d.size(); ++b) {
      const double expected = sign * d[b] / std::sqrt(8.0);
      REQUIRE(std::abs(sv.amplitudes()[b].real() - expected) < 1e-12);
    }
  }
}

TEST_CASE("random_zk respects the level bound and is seed-deterministic") {
  Rng a(5), b(5);
  ZkElement ga = random_zk(4, 2, a);
  ZkElement gb = random_zk(4, 2, b);
  REQUIRE(ga == gb);
  Rng rng(6);
  for (int rep = 0; rep < 100; ++rep) REQUIRE(zk_level(random_zk(5, 3, rng)) <= 3);
  // n = 1, k = 1 hits all four elements of {+-I, +-Z}.
  bool seen[4] = {false, false, false, false};
  Rng r2(7);
  for (int rep = 0; rep < 200; ++rep) {
    ZkElement g = random_zk(1, 1, r2);
    int idx = (g.negative ? 1 : 0) + 2 * (g.monomials.empty() ? 0 : 1);
    seen[idx] = true;
  }
  REQUIRE((seen[0] && seen[1] && seen[2] && seen[3]));
}

TEST_CASE("text form round-trips and matches the documented format") {
  ZkElement g = ZkElement::make(3, 2, true, {0b001, 0b110});
  REQUIRE(g.to_text() == "-;0;1,2");
  REQUIRE(ZkElement::from_text(g.to_text(), 3) == g);
  REQUIRE(ZkElement::from_text("+", 2) == ZkElement::identity(2, 0));
  Rng rng(404);
  for (int rep = 0; rep < 50; ++rep) {
    ZkElement e = random_zk(4, 3, rng);
    REQUIRE(ZkElement::from_text(e.to_text(), 4) == e);
  }
}

TEST_CASE("packed form stays within the counting bound") {
  // sum_{j=0}^{k} C(n,j) bits of payload, sign included.
  REQUIRE(ZkElement::packed_bit_count(4, 2) == 1 + 4 + 6);
  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_index(4));
    const int k = 1 + static_cast<int>(rng.next_index(std::min(n, 3)));
    ZkElement g = random_zk(n, k, rng);
    auto bytes = g.pack();
    REQUIRE(8 * bytes.size() <= ZkElement::packed_bit_count(n, k) + 7);
    REQUIRE(ZkElement::unpack(n, k, bytes) == g);
  }
}

TEST_CASE("monomial enumeration is canonical and complete") {
  auto all = enumerate_monomials(3, 2);
  REQUIRE(all == std::vector<std::uint64_t>{0b001, 0b010, 0b100, 0b011, 0b101, 0b110});
  REQUIRE(enumerate_monomials(4, 4).size() == 15);
}
