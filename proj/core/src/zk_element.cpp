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

#include "teleprep/pauli/zk_element.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "teleprep/common/errors.hpp"

namespace teleprep::pauli {

namespace {

void toggle(std::vector<std::uint64_t>& sorted, std::uint64_t m) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
  if (it != sorted.end() && *it == m)
    sorted.erase(it);
  else
    sorted.insert(it, m);
}

}  // namespace

ZkElement ZkElement::make(int n, int k, bool negative, std::vector<std::uint64_t> monomials) {
  if (n < 0 || n > PauliString::kMaxQubits) throw UsageError("ZkElement: n out of range");
  if (k < 0 || k > n) throw UsageError("ZkElement: k out of range");
  std::sort(monomials.begin(), monomials.end());
  // Duplicate pairs cancel over GF(2).
  std::vector<std::uint64_t> canon;
  for (std::size_t i = 0; i < monomials.size();) {
    if (i + 1 < monomials.size() && monomials[i] == monomials[i + 1]) {
      i += 2;
      continue;
    }
    canon.push_back(monomials[i]);
    ++i;
  }
  for (std::uint64_t m : canon) {
    if (m == 0) throw UsageError("ZkElement: empty monomial");
    if (n < 64 && (m >> n) != 0) throw UsageError("ZkElement: monomial beyond qubit count");
    if (std::popcount(m) > k) throw UsageError("ZkElement: monomial larger than level bound");
  }
  return ZkElement{n, k, negative, std::move(canon)};
}

bool ZkElement::contains(std::uint64_t monomial) const {
  return std::binary_search(monomials.begin(), monomials.end(), monomial);
}

int zk_level(const ZkElement& g) {
  int level = 0;
  for (std::uint64_t m : g.monomials) level = std::max(level, std::popcount(m));
  return level;
}

ZkElement zk_multiply(const ZkElement& a, const ZkElement& b, std::uint64_t* xor_ops) {
  if (a.n != b.n) throw UsageError("zk_multiply: size mismatch");
  ZkElement out;
  out.n = a.n;
  out.k = std::max(a.k, b.k);
  out.negative = a.negative != b.negative;
  out.monomials.reserve(a.monomials.size() + b.monomials.size());
  std::size_t i = 0, j = 0;
  while (i < a.monomials.size() || j < b.monomials.size()) {
    if (j == b.monomials.size() || (i < a.monomials.size() && a.monomials[i] < b.monomials[j])) {
      out.monomials.push_back(a.monomials[i++]);
    } else if (i == a.monomials.size() || b.monomials[j] < a.monomials[i]) {
      out.monomials.push_back(b.monomials[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  if (xor_ops) *xor_ops += a.monomials.size() + b.monomials.size();
  return out;
}

ZkElement zk_conjugate_by_x(const ZkElement& g, std::uint64_t s_mask, std::uint64_t* xor_ops) {
  if (g.n < 64 && (s_mask >> g.n) != 0)
    throw UsageError("zk_conjugate_by_x: s beyond qubit count");
  // Shift the phase polynomial by X_i for each i in s, then cancel the
  // original monomials by multiplying with g. The shifts only ever add
  // monomials strictly inside existing ones, so the level can only drop.
  std::vector<std::uint64_t> work = g.monomials;
  bool sign_flips = false;
  for (int i = 0; i < g.n; ++i) {
    if (!((s_mask >> i) & 1u)) continue;
    const std::uint64_t bit = std::uint64_t{1} << i;
    std::vector<std::uint64_t> emitted;
    for (std::uint64_t m : work)
      if (m & bit) emitted.push_back(m & ~bit);
    for (std::uint64_t d : emitted) {
      if (xor_ops) ++*xor_ops;
      if (d == 0)
        sign_flips = !sign_flips;
      else
        toggle(work, d);
    }
  }
  ZkElement shifted{g.n, g.k, sign_flips, std::move(work)};
  ZkElement result = zk_multiply(shifted, ZkElement{g.n, g.k, false, g.monomials}, xor_ops);
  result.k = std::max(g.k - 1, 0);
  for (std::uint64_t m : result.monomials)
    if (std::popcount(m) > result.k)
      throw InternalError("zk_conjugate_by_x: level did not drop");
  return result;
}

std::tuple<PauliString, ZkElement, ZkElement> zk_commute_x_left(const ZkElement& g,
                                                                std::uint64_t s_mask) {
  return {PauliString::x_product(g.n, s_mask), zk_conjugate_by_x(g, s_mask), g};
}

DiagonalCircuit zk_to_circuit(const ZkElement& g) {
  DiagonalCircuit c;
  c.n = g.n;
  c.negative = g.negative;
  for (std::uint64_t m : g.monomials) {
    std::vector<int> term;
    for (int q = 0; q < g.n; ++q)
      if ((m >> q) & 1u) term.push_back(q);
    c.mcz_terms.push_back(std::move(term));
  }
  return c;
}

std::vector<int> zk_to_matrix(const ZkElement& g) {
  if (g.n > 12) throw UsageError("zk_to_matrix: n too large (max 12)");
  const std::size_t dim = std::size_t{1} << g.n;
  std::vector<int> diag(dim, g.negative ? -1 : 1);
  for (std::uint64_t m : g.monomials) {
    // Qubit q is bit (n-1-q) of the basis index.
    std::size_t mask = 0;
    for (int q = 0; q < g.n; ++q)
      if ((m >> q) & 1u) mask |= std::size_t{1} << (g.n - 1 - q);
    for (std::size_t b = 0; b < dim; ++b)
      if ((b & mask) == mask) diag[b] = -diag[b];
  }
  return diag;
}

std::vector<std::uint64_t> enumerate_monomials(int n, int max_size) {
  std::vector<std::uint64_t> all;
  for (int size = 1; size <= max_size; ++size) {
    // Ascending-mask enumeration of fixed-popcount subsets (Gosper's hack).
    if (size > n) break;
    std::uint64_t m = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n);
    while (n == 64 || m < limit) {
      all.push_back(m);
      std::uint64_t c = m & (~m + 1);
      std::uint64_t r = m + c;
      std::uint64_t next = (((r ^ m) >> 2) / c) | r;
      if (next <= m || (n < 64 && next >= limit)) break;
      m = next;
    }
  }
  return all;
}

ZkElement random_zk(int n, int k, Rng& rng) {
  if (k < 1 || k > n) throw UsageError("random_zk: need 1 <= k <= n");
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t m : enumerate_monomials(n, k))
    if (rng.next_bit()) chosen.push_back(m);
  bool negative = rng.next_bit() != 0;
  return ZkElement::make(n, k, negative, std::move(chosen));
}

std::string ZkElement::to_text() const {
  std::string out = negative ? "-" : "+";
  for (std::uint64_t m : monomials) {
    out += ';';
    bool first = true;
    for (int q = 0; q < n; ++q) {
      if (!((m >> q) & 1u)) continue;
      if (!first) out += ',';
      out += std::to_string(q);
      first = false;
    }
  }
  return out;
}

ZkElement ZkElement::from_text(const std::string& text, int n) {
  if (text.empty()) throw UsageError("ZkElement::from_text: empty text");
  std::stringstream ss(text);
  std::string token;
  if (!std::getline(ss, token, ';')) throw UsageError("ZkElement::from_text: missing sign");
  bool negative;
  if (token == "+") negative = false;
  else if (token == "-") negative = true;
  else throw UsageError("ZkElement::from_text: bad sign token '" + token + "'");

  std::vector<std::uint64_t> monomials;
  int max_qubit = -1;
  while (std::getline(ss, token, ';')) {
    std::uint64_t m = 0;
    std::stringstream ms(token);
    std::string idx;
    while (std::getline(ms, idx, ',')) {
      int q = std::stoi(idx);
      if (q < 0 || q >= PauliString::kMaxQubits)
        throw UsageError("ZkElement::from_text: qubit index out of range");
      m |= std::uint64_t{1} << q;
      max_qubit = std::max(max_qubit, q);
    }
    if (m == 0) throw UsageError("ZkElement::from_text: empty monomial");
    monomials.push_back(m);
  }
  int level = 0;
  for (std::uint64_t m : monomials) level = std::max(level, std::popcount(m));
  if (n < 0) n = max_qubit + 1;
  if (max_qubit >= n) throw UsageError("ZkElement::from_text: qubit index exceeds n");
  return ZkElement::make(n, level, negative, std::move(monomials));
}

std::uint64_t ZkElement::packed_bit_count(int n, int k) {
  std::uint64_t total = 1;  // the sign bit (the size-0 "monomial")
  std::uint64_t c = 1;
  for (int j = 1; j <= k; ++j) {
    c = c * static_cast<std::uint64_t>(n - j + 1) / static_cast<std::uint64_t>(j);
    total += c;
  }
  return total;
}

std::vector<std::uint8_t> ZkElement::pack() const {
  auto order = enumerate_monomials(n, k);
  std::vector<std::uint8_t> bytes((order.size() + 1 + 7) / 8, 0);
  auto set_bit = [&](std::size_t i) { bytes[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7)); };
  if (negative) set_bit(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (contains(order[i])) set_bit(i + 1);
  return bytes;
}

ZkElement ZkElement::unpack(int n, int k, const std::vector<std::uint8_t>& bytes) {
  auto order = enumerate_monomials(n, k);
  auto get_bit = [&](std::size_t i) {
    return (bytes[i >> 3] >> (i & 7)) & 1u;
  };
  if (bytes.size() < (order.size() + 1 + 7) / 8) throw UsageError("ZkElement::unpack: short buffer");
  std::vector<std::uint64_t> monomials;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (get_bit(i + 1)) monomials.push_back(order[i]);
  return ZkElement::make(n, k, get_bit(0) != 0, std::move(monomials));
}

}  // namespace teleprep::pauli
