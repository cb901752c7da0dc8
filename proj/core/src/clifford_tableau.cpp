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

#include "teleprep/pauli/clifford_tableau.hpp"

#include <bit>

#include "teleprep/common/errors.hpp"

namespace teleprep::pauli {

namespace {

inline bool bit(std::uint64_t m, int q) { return (m >> q) & 1u; }
inline void flip(std::uint64_t& m, int q, bool v) {
  if (v) m ^= std::uint64_t{1} << q;
}

}  // namespace

void conjugate_by_gate(PauliString& p, circuit::Gate g, std::span<const int> targets) {
  using circuit::Gate;
  if (!circuit::is_clifford(g)) throw UsageError("conjugate_by_gate: non-Clifford gate");
  switch (g) {
    case Gate::H: {
      int q = targets[0];
      bool xb = bit(p.x_bits, q), zb = bit(p.z_bits, q);
      // X^x Z^z -> Z^x X^z = (-1)^{xz} X^z Z^x
      flip(p.x_bits, q, xb != zb);
      flip(p.z_bits, q, xb != zb);
      if (xb && zb) p.phase_pow = (p.phase_pow + 2) % 4;
      break;
    }
    case Gate::S: {
      int q = targets[0];
      bool xb = bit(p.x_bits, q);
      if (xb) {
        // X -> Y = i X Z
        p.z_bits ^= std::uint64_t{1} << q;
        p.phase_pow = (p.phase_pow + 1) % 4;
      }
      break;
    }
    case Gate::Sdg: {
      int q = targets[0];
      if (bit(p.x_bits, q)) {
        // X -> -Y = -i X Z
        p.z_bits ^= std::uint64_t{1} << q;
        p.phase_pow = (p.phase_pow + 3) % 4;
      }
      break;
    }
    case Gate::X: {
      int q = targets[0];
      if (bit(p.z_bits, q)) p.phase_pow = (p.phase_pow + 2) % 4;
      break;
    }
    case Gate::Z: {
      int q = targets[0];
      if (bit(p.x_bits, q)) p.phase_pow = (p.phase_pow + 2) % 4;
      break;
    }
    case Gate::Cnot: {
      int c = targets[0], t = targets[1];
      bool xc = bit(p.x_bits, c), zt = bit(p.z_bits, t);
      flip(p.x_bits, t, xc);
      flip(p.z_bits, c, zt);
      break;
    }
    case Gate::Cz: {
      int a = targets[0], b = targets[1];
      bool xa = bit(p.x_bits, a), xb = bit(p.x_bits, b);
      flip(p.z_bits, b, xa);
      flip(p.z_bits, a, xb);
      if (xa && xb) p.phase_pow = (p.phase_pow + 2) % 4;
      break;
    }
    default:
      throw InternalError("conjugate_by_gate: unhandled gate");
  }
}

CliffordTableau::CliffordTableau(int n) : n_(n) {
  if (n < 1 || n > PauliString::kMaxQubits) throw UsageError("CliffordTableau: n out of range");
  x_images_.reserve(static_cast<std::size_t>(n));
  z_images_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x_images_.push_back(PauliString::single_x(n, i));
    z_images_.push_back(PauliString::single_z(n, i));
  }
}

void CliffordTableau::append_gate(circuit::Gate g, std::span<const int> targets) {
  for (auto& row : x_images_) conjugate_by_gate(row, g, targets);
  for (auto& row : z_images_) conjugate_by_gate(row, g, targets);
}

CliffordTableau CliffordTableau::from_circuit(const circuit::GateSequence& gates, int n) {
  CliffordTableau t(n);
  for (const auto& op : gates) {
    if (op.kind != circuit::CircuitOp::Kind::kGate)
      throw UsageError("CliffordTableau::from_circuit: only unitary gates allowed");
    t.append_gate(op.gate, op.qubits);
  }
  return t;
}

PauliString CliffordTableau::conjugate(const PauliString& p) const {
  if (p.n != n_) throw UsageError("CliffordTableau::conjugate: size mismatch");
  PauliString result = PauliString::identity(n_);
  result.phase_pow = p.phase_pow;
  for (int i = 0; i < n_; ++i)
    if (p.x(i)) result = pauli_multiply(result, x_images_[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n_; ++i)
    if (p.z(i)) result = pauli_multiply(result, z_images_[static_cast<std::size_t>(i)]);
  return result;
}

bool CliffordTableau::is_valid() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      bool want_anti = (i == j);
      if (x_images_[static_cast<std::size_t>(i)].commutes_with(
              z_images_[static_cast<std::size_t>(j)]) == want_anti)
        return false;
      if (!x_images_[static_cast<std::size_t>(i)].commutes_with(
              x_images_[static_cast<std::size_t>(j)]))
        return false;
      if (!z_images_[static_cast<std::size_t>(i)].commutes_with(
              z_images_[static_cast<std::size_t>(j)]))
        return false;
    }
  }
  return true;
}

PauliString factorize_correction(const CliffordTableau& t, std::uint64_t x_bits,
                                 std::uint64_t z_bits) {
  PauliString result = PauliString::identity(t.n());
  for (int i = 0; i < t.n(); ++i)
    if (bit(x_bits, i)) result = pauli_multiply(result, t.x_image(i));
  for (int i = 0; i < t.n(); ++i)
    if (bit(z_bits, i)) result = pauli_multiply(result, t.z_image(i));
  return result;
}

}  // namespace teleprep::pauli
