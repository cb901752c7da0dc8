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

#include "teleprep/sim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "teleprep/common/errors.hpp"

namespace teleprep::sim {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
}

Statevector Statevector::from_amplitudes(int n, std::vector<Amplitude> amps) {
  if (n < 0 || n > pauli::PauliString::kMaxQubits)
    throw UsageError("from_amplitudes: n out of range");
  if (amps.size() != (std::size_t{1} << n))
    throw UsageError("from_amplitudes: need exactly 2^n amplitudes");
  Statevector sv;
  sv.amps_ = std::move(amps);
  for (int i = 0; i < n; ++i) sv.qubits_.push_back(sv.next_label_++);
  double norm = sv.norm();
  if (norm < 1e-12) throw UsageError("from_amplitudes: zero vector");
  for (auto& a : sv.amps_) a /= norm;
  return sv;
}

std::vector<int> Statevector::allocate(int count, std::string_view initial) {
  if (count < 1) throw UsageError("allocate: count must be >= 1");
  if (static_cast<int>(initial.size()) != count)
    throw UsageError("allocate: initial pattern length must equal count");
  if (num_qubits() + count > pauli::PauliString::kMaxQubits)
    throw UsageError("allocate: qubit budget exceeded");
  for (char c : initial)
    if (c != '0' && c != '+') throw UsageError("allocate: initial pattern must be over {0,+}");

  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    labels.push_back(next_label_);
    if (std::find(qubits_.begin(), qubits_.end(), next_label_) != qubits_.end())
      throw InternalError("allocate: label collision");
    qubits_.push_back(next_label_);
    ++next_label_;
  }

  const std::size_t block = std::size_t{1} << count;
  std::vector<Amplitude> pattern(block, Amplitude{0.0, 0.0});
  pattern[0] = {1.0, 0.0};
  std::size_t filled = 1;
  for (int i = 0; i < count; ++i) {
    // Extend by one qubit: '0' keeps the low half, '+' splits evenly.
    for (std::size_t j = filled; j-- > 0;) {
      Amplitude v = pattern[j];
      pattern[j] = {0.0, 0.0};
      if (initial[i] == '0') {
        pattern[j << 1] = v;
      } else {
        pattern[j << 1] = v * kInvSqrt2;
        pattern[(j << 1) | 1] = v * kInvSqrt2;
      }
    }
    filled <<= 1;
  }

  std::vector<Amplitude> next(amps_.size() * block);
  for (std::size_t i = 0; i < amps_.size(); ++i)
    for (std::size_t j = 0; j < block; ++j) next[(i << count) | j] = amps_[i] * pattern[j];
  amps_ = std::move(next);
  return labels;
}

bool Statevector::is_live(int qubit) const {
  return std::find(qubits_.begin(), qubits_.end(), qubit) != qubits_.end();
}

int Statevector::position_of(int qubit) const {
  auto it = std::find(qubits_.begin(), qubits_.end(), qubit);
  if (it == qubits_.end()) throw UsageError("qubit label is not live");
  return static_cast<int>(it - qubits_.begin());
}

int Statevector::bitpos_of(int qubit) const {
  return num_qubits() - 1 - position_of(qubit);
}

void Statevector::apply_gate(circuit::Gate g, std::span<const int> targets) {
  using circuit::Gate;
  const bool two = circuit::is_two_qubit(g);
  if (static_cast<std::size_t>(two ? 2 : 1) != targets.size())
    throw UsageError("apply_gate: arity mismatch");
  if (two && targets[0] == targets[1]) throw UsageError("apply_gate: targets must be distinct");

  const std::size_t dim = amps_.size();
  if (!two) {
    const std::size_t m = std::size_t{1} << bitpos_of(targets[0]);
    switch (g) {
      case Gate::X:
        for (std::size_t i = 0; i < dim; ++i)
          if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
        break;
      case Gate::Z:
        for (std::size_t i = 0; i < dim; ++i)
          if (i & m) amps_[i] = -amps_[i];
        break;
      case Gate::H:
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & m) continue;
          Amplitude a = amps_[i], b = amps_[i | m];
          amps_[i] = (a + b) * kInvSqrt2;
          amps_[i | m] = (a - b) * kInvSqrt2;
        }
        break;
      case Gate::S:
        for (std::size_t i = 0; i < dim; ++i)
          if (i & m) amps_[i] *= Amplitude{0.0, 1.0};
        break;
      case Gate::Sdg:
        for (std::size_t i = 0; i < dim; ++i)
          if (i & m) amps_[i] *= Amplitude{0.0, -1.0};
        break;
      case Gate::T: {
        const Amplitude w{kInvSqrt2, kInvSqrt2};
        for (std::size_t i = 0; i < dim; ++i)
          if (i & m) amps_[i] *= w;
        break;
      }
      case Gate::Tdg: {
        const Amplitude w{kInvSqrt2, -kInvSqrt2};
        for (std::size_t i = 0; i < dim; ++i)
          if (i & m) amps_[i] *= w;
        break;
      }
      default:
        throw InternalError("apply_gate: bad single-qubit gate");
    }
    return;
  }

  const std::size_t mc = std::size_t{1} << bitpos_of(targets[0]);
  const std::size_t mt = std::size_t{1} << bitpos_of(targets[1]);
  if (g == Gate::Cnot) {
    for (std::size_t i = 0; i < dim; ++i)
      if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
  } else {  // CZ
    for (std::size_t i = 0; i < dim; ++i)
      if ((i & mc) && (i & mt)) amps_[i] = -amps_[i];
  }
}

void Statevector::apply_mcz(std::span<const int> targets) {
  if (targets.empty()) throw UsageError("apply_mcz: empty target set");
  std::size_t mask = 0;
  for (int q : targets) {
    std::size_t m = std::size_t{1} << bitpos_of(q);
    if (mask & m) throw UsageError("apply_mcz: duplicate target");
    mask |= m;
  }
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i & mask) == mask) amps_[i] = -amps_[i];
}

void Statevector::apply_pauli(const pauli::PauliString& p, std::span<const int> labels) {
  if (static_cast<std::size_t>(p.n) != labels.size())
    throw UsageError("apply_pauli: label count mismatch");
  std::size_t xmask = 0, zmask = 0;
  for (int q = 0; q < p.n; ++q) {
    std::size_t m = std::size_t{1} << bitpos_of(labels[q]);
    if (p.x(q)) xmask |= m;
    if (p.z(q)) zmask |= m;
  }
  // |b> -> (-1)^{z.b} |b ^ x>; the i^p factor is global.
  std::vector<Amplitude> next(amps_.size());
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    double sign = (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
    next[b ^ xmask] = sign * amps_[b];
  }
  amps_ = std::move(next);
  global_phase_ *= p.phase();
}

double Statevector::norm() const {
  double s = 0.0;
  for (const Amplitude& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

double Statevector::probability_one(int qubit) const {
  const std::size_t m = std::size_t{1} << bitpos_of(qubit);
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (i & m) p += std::norm(amps_[i]);
  return p;
}

void Statevector::collapse_and_remove(int qubit, int bit, double prob) {
  const int bp = bitpos_of(qubit);
  const std::size_t m = std::size_t{1} << bp;
  const double scale = 1.0 / std::sqrt(prob);

  if (keep_measured_) {
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      bool hit = ((i & m) != 0) == (bit == 1);
      amps_[i] = hit ? amps_[i] * scale : Amplitude{0.0, 0.0};
    }
    return;
  }

  std::vector<Amplitude> next(amps_.size() >> 1);
  const std::size_t low = m - 1;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i & m) != 0) != (bit == 1)) continue;
    std::size_t j = ((i >> (bp + 1)) << bp) | (i & low);
    next[j] = amps_[i] * scale;
  }
  amps_ = std::move(next);
  qubits_.erase(qubits_.begin() + position_of(qubit));
}

MeasurementOutcome Statevector::measure(int qubit, Basis basis, Rng& rng) {
  if (basis == Basis::X) apply_gate(circuit::Gate::H, {qubit});
  double p1 = probability_one(qubit);
  int bit = (rng.next_double() < p1) ? 1 : 0;
  collapse_and_remove(qubit, bit, bit == 1 ? p1 : 1.0 - p1);
  return MeasurementOutcome{qubit, basis, bit};
}

double Statevector::postselect(int qubit, Basis basis, int bit) {
  if (bit != 0 && bit != 1) throw UsageError("postselect: bit must be 0 or 1");
  if (basis == Basis::X) apply_gate(circuit::Gate::H, {qubit});
  double p1 = probability_one(qubit);
  double p = (bit == 1) ? p1 : 1.0 - p1;
  if (p < 1e-12) throw UsageError("postselect: branch has (numerically) zero probability");
  collapse_and_remove(qubit, bit, p);
  return p;
}

void Statevector::discard_zero(int qubit, double tol) {
  double p1 = probability_one(qubit);
  if (p1 > tol) throw UsageError("discard_zero: qubit is not |0>");
  collapse_and_remove(qubit, 0, 1.0 - p1);
}

std::unordered_map<int, int> Statevector::absorb(const Statevector& other) {
  if (num_qubits() + other.num_qubits() > pauli::PauliString::kMaxQubits)
    throw UsageError("absorb: qubit budget exceeded");
  std::unordered_map<int, int> remap;
  remap.reserve(other.qubits_.size());
  for (int old_label : other.qubits_) {
    remap[old_label] = next_label_;
    qubits_.push_back(next_label_);
    ++next_label_;
  }
  const int k = other.num_qubits();
  std::vector<Amplitude> next(amps_.size() << k);
  for (std::size_t i = 0; i < amps_.size(); ++i)
    for (std::size_t j = 0; j < other.amps_.size(); ++j)
      next[(i << k) | j] = amps_[i] * other.amps_[j];
  amps_ = std::move(next);
  global_phase_ *= other.global_phase_;
  return remap;
}

namespace {

// Bit position in b's index for each bit position in a's index. When the two
// states share a label set the alignment is by label; otherwise qubits are
// matched positionally (oracle states are built in logical order).
std::vector<int> alignment(const Statevector& a, const Statevector& b) {
  const int n = a.num_qubits();
  std::vector<int> b_bitpos(static_cast<std::size_t>(n));
  bool same_labels = true;
  for (int label : a.live_qubits())
    if (!b.is_live(label)) same_labels = false;
  for (int pos = 0; pos < n; ++pos) {
    const int b_pos =
        same_labels ? b.position_of(a.live_qubits()[static_cast<std::size_t>(pos)]) : pos;
    b_bitpos[static_cast<std::size_t>(n - 1 - pos)] = n - 1 - b_pos;
  }
  return b_bitpos;
}

std::size_t translate(std::size_t ia, const std::vector<int>& b_bitpos) {
  std::size_t ib = 0;
  for (std::size_t bp = 0; bp < b_bitpos.size(); ++bp)
    if (ia & (std::size_t{1} << bp)) ib |= std::size_t{1} << b_bitpos[bp];
  return ib;
}

}  // namespace

double Statevector::overlap_magnitude(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("overlap: qubit count mismatch");
  const auto b_bitpos = alignment(a, b);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t ia = 0; ia < a.amps_.size(); ++ia)
    acc += std::conj(a.amps_[ia]) * b.amps_[translate(ia, b_bitpos)];
  return std::abs(acc);
}

double Statevector::trace_distance(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("trace_distance: qubit count mismatch");
  const auto b_bitpos = alignment(a, b);
  std::complex<double> z{0.0, 0.0};
  for (std::size_t ia = 0; ia < a.amps_.size(); ++ia)
    z += std::conj(a.amps_[ia]) * b.amps_[translate(ia, b_bitpos)];
  const double f = std::abs(z);
  if (f < 0.5) {
    const double v = 1.0 - f * f;
    return v > 0.0 ? std::sqrt(v) : 0.0;
  }
  // Near-identical states: 1 - f*f cancels catastrophically. The phase-aligned
  // residual norm gives 1 - f = |r|^2 / 2 at full precision instead.
  const std::complex<double> phase = std::conj(z) / f;
  double residual_sq = 0.0;
  for (std::size_t ia = 0; ia < a.amps_.size(); ++ia) {
    const std::complex<double> r = a.amps_[ia] - phase * b.amps_[translate(ia, b_bitpos)];
    residual_sq += std::norm(r);
  }
  const double delta = 0.5 * residual_sq;  // = 1 - f
  const double v = delta * (2.0 - delta);  // = 1 - f^2
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace teleprep::sim
