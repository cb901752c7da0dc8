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

#include "teleprep/pauli/pauli_string.hpp"

#include <bit>

#include "teleprep/common/errors.hpp"

namespace teleprep::pauli {

namespace {

std::uint64_t qubit_bit(int n, int qubit) {
  if (qubit < 0 || qubit >= n) throw UsageError("PauliString: qubit index out of range");
  return std::uint64_t{1} << qubit;
}

}  // namespace

PauliString::PauliString(int n_, std::uint64_t x, std::uint64_t z, int phase)
    : n(n_), x_bits(x), z_bits(z), phase_pow(((phase % 4) + 4) % 4) {
  if (n < 0 || n > kMaxQubits) throw UsageError("PauliString: n out of range");
  if (n < 64 && ((x | z) >> n) != 0)
    throw UsageError("PauliString: bit set beyond qubit count");
}

PauliString PauliString::single_x(int n, int qubit) {
  return PauliString(n, qubit_bit(n, qubit), 0, 0);
}

PauliString PauliString::single_z(int n, int qubit) {
  return PauliString(n, 0, qubit_bit(n, qubit), 0);
}

PauliString PauliString::single_y(int n, int qubit) {
  std::uint64_t b = qubit_bit(n, qubit);
  return PauliString(n, b, b, 1);  // Y = i*X*Z
}

std::complex<double> PauliString::phase() const {
  switch (phase_pow & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString PauliString::adjoint() const {
  // (i^p X^x Z^z)^dag = i^{-p} Z^z X^x = i^{-p} (-1)^{|x&z|} X^x Z^z.
  int p = (-phase_pow + 2 * std::popcount(x_bits & z_bits)) % 4;
  return PauliString(n, x_bits, z_bits, p);
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n != other.n) throw UsageError("PauliString: size mismatch");
  int sym = std::popcount(x_bits & other.z_bits) + std::popcount(z_bits & other.x_bits);
  return (sym & 1) == 0;
}

PauliString pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw UsageError("pauli_multiply: size mismatch");
  // Z^{az} X^{bx} = (-1)^{|az & bx|} X^{bx} Z^{az}.
  int p = a.phase_pow + b.phase_pow + 2 * std::popcount(a.z_bits & b.x_bits);
  return PauliString(a.n, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits, p);
}

std::string PauliString::to_text() const {
  static const char* kPhase[4] = {"+", "+i", "-", "-i"};
  std::string out = kPhase[phase_pow & 3];
  out += ';';
  for (int q = 0; q < n; ++q) out += x(q) ? '1' : '0';
  out += ';';
  for (int q = 0; q < n; ++q) out += z(q) ? '1' : '0';
  return out;
}

PauliString PauliString::from_text(const std::string& text) {
  auto first = text.find(';');
  auto second = text.find(';', first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw UsageError("PauliString::from_text: expected '<phase>;<xbits>;<zbits>'");
  std::string phase = text.substr(0, first);
  std::string xs = text.substr(first + 1, second - first - 1);
  std::string zs = text.substr(second + 1);
  if (xs.size() != zs.size()) throw UsageError("PauliString::from_text: bit string length mismatch");
  int p;
  if (phase == "+") p = 0;
  else if (phase == "+i") p = 1;
  else if (phase == "-") p = 2;
  else if (phase == "-i") p = 3;
  else throw UsageError("PauliString::from_text: bad phase token '" + phase + "'");
  PauliString result(static_cast<int>(xs.size()), 0, 0, p);
  for (std::size_t q = 0; q < xs.size(); ++q) {
    if (xs[q] == '1') result.x_bits |= std::uint64_t{1} << q;
    else if (xs[q] != '0') throw UsageError("PauliString::from_text: bad x bit");
    if (zs[q] == '1') result.z_bits |= std::uint64_t{1} << q;
    else if (zs[q] != '0') throw UsageError("PauliString::from_text: bad z bit");
  }
  return result;
}

std::string PauliString::to_letters() const {
  // Fold one -i into the phase for every qubit carrying both bits.
  int p = (phase_pow + 3 * std::popcount(x_bits & z_bits)) % 4;
  static const char* kPhase[4] = {"+", "+i", "-", "-i"};
  std::string out = kPhase[p];
  out += " * ";
  if (n == 0) {
    out += "I";
    return out;
  }
  for (int q = 0; q < n; ++q) {
    bool xb = x(q), zb = z(q);
    out += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return out;
}

}  // namespace teleprep::pauli
