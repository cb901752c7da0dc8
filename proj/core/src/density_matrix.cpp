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

#include "teleprep/sim/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "teleprep/common/errors.hpp"

namespace teleprep::sim {

namespace {
using Cd = std::complex<double>;
}

DensityMatrix DensityMatrix::from_statevector(const Statevector& sv) {
  DensityMatrix dm;
  const auto& amps = sv.amplitudes();
  const auto dim = static_cast<Eigen::Index>(amps.size());
  dm.mat_.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      dm.mat_(i, j) = amps[static_cast<std::size_t>(i)] * std::conj(amps[static_cast<std::size_t>(j)]);
  dm.qubits_ = sv.live_qubits();
  for (int q : dm.qubits_) dm.next_label_ = std::max(dm.next_label_, q + 1);
  return dm;
}

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd mat) {
  if (mat.rows() != mat.cols()) throw UsageError("DensityMatrix: matrix must be square");
  int n = 0;
  while ((Eigen::Index{1} << n) < mat.rows()) ++n;
  if ((Eigen::Index{1} << n) != mat.rows())
    throw UsageError("DensityMatrix: dimension must be a power of two");
  DensityMatrix dm;
  dm.mat_ = std::move(mat);
  for (int i = 0; i < n; ++i) dm.qubits_.push_back(dm.next_label_++);
  return dm;
}

std::vector<int> DensityMatrix::allocate(int count, std::string_view initial) {
  Statevector sv;
  sv.allocate(count, initial);
  DensityMatrix fresh = from_statevector(sv);
  const int k = count;
  Eigen::MatrixXcd next(mat_.rows() << k, mat_.cols() << k);
  for (Eigen::Index i = 0; i < mat_.rows(); ++i)
    for (Eigen::Index j = 0; j < mat_.cols(); ++j)
      next.block(i << k, j << k, fresh.mat_.rows(), fresh.mat_.cols()) = mat_(i, j) * fresh.mat_;
  mat_ = std::move(next);
  std::vector<int> labels;
  for (int i = 0; i < count; ++i) {
    labels.push_back(next_label_);
    qubits_.push_back(next_label_);
    ++next_label_;
  }
  return labels;
}

std::unordered_map<int, int> DensityMatrix::absorb(const DensityMatrix& other) {
  std::unordered_map<int, int> remap;
  std::vector<int> new_labels;
  for (int old_label : other.qubits_) {
    remap[old_label] = next_label_;
    new_labels.push_back(next_label_);
    ++next_label_;
  }
  const int k = other.num_qubits();
  Eigen::MatrixXcd next(mat_.rows() << k, mat_.cols() << k);
  for (Eigen::Index i = 0; i < mat_.rows(); ++i)
    for (Eigen::Index j = 0; j < mat_.cols(); ++j)
      next.block(i << k, j << k, other.mat_.rows(), other.mat_.cols()) = mat_(i, j) * other.mat_;
  mat_ = std::move(next);
  qubits_.insert(qubits_.end(), new_labels.begin(), new_labels.end());
  return remap;
}

int DensityMatrix::position_of(int qubit) const {
  auto it = std::find(qubits_.begin(), qubits_.end(), qubit);
  if (it == qubits_.end()) throw UsageError("DensityMatrix: qubit label is not live");
  return static_cast<int>(it - qubits_.begin());
}

void DensityMatrix::partial_swap(std::span<const int> reg_a, std::span<const int> reg_b,
                                 double angle) {
  if (reg_a.size() != reg_b.size()) throw UsageError("partial_swap: register size mismatch");
  const int n = num_qubits();
  std::vector<int> bit_a, bit_b;
  for (std::size_t i = 0; i < reg_a.size(); ++i) {
    int pa = position_of(reg_a[i]);
    int pb = position_of(reg_b[i]);
    if (pa == pb) throw UsageError("partial_swap: registers must be disjoint");
    bit_a.push_back(n - 1 - pa);
    bit_b.push_back(n - 1 - pb);
  }
  const Eigen::Index dim = mat_.rows();
  // exp(-i*angle*SWAP) = cos(angle)*I - i*sin(angle)*SWAP.
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  const Cd c{std::cos(angle), 0.0};
  const Cd ms{0.0, -std::sin(angle)};
  for (Eigen::Index b = 0; b < dim; ++b) {
    auto idx = static_cast<std::size_t>(b);
    std::size_t swapped = idx;
    for (std::size_t i = 0; i < bit_a.size(); ++i) {
      std::size_t ba = (idx >> bit_a[i]) & 1u;
      std::size_t bb = (idx >> bit_b[i]) & 1u;
      if (ba != bb) {
        swapped ^= std::size_t{1} << bit_a[i];
        swapped ^= std::size_t{1} << bit_b[i];
      }
    }
    u(b, b) += c;
    u(static_cast<Eigen::Index>(swapped), b) += ms;
  }
  apply_unitary(u);
}

void DensityMatrix::apply_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != mat_.rows() || u.cols() != mat_.cols())
    throw UsageError("apply_unitary: dimension mismatch");
  mat_ = u * mat_ * u.adjoint();
}

void DensityMatrix::partial_trace(std::span<const int> discard) {
  if (discard.empty()) return;
  const int n = num_qubits();
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (int q : discard) {
    int p = position_of(q);
    if (dropped[static_cast<std::size_t>(p)]) throw UsageError("partial_trace: duplicate qubit");
    dropped[static_cast<std::size_t>(p)] = true;
  }
  std::vector<int> keep_bitpos, drop_bitpos;
  std::vector<int> new_qubits;
  for (int p = 0; p < n; ++p) {
    if (dropped[static_cast<std::size_t>(p)]) {
      drop_bitpos.push_back(n - 1 - p);
    } else {
      keep_bitpos.push_back(n - 1 - p);
      new_qubits.push_back(qubits_[static_cast<std::size_t>(p)]);
    }
  }
  const int nk = static_cast<int>(keep_bitpos.size());
  const int nd = static_cast<int>(drop_bitpos.size());
  const std::size_t dim_k = std::size_t{1} << nk;
  const std::size_t dim_d = std::size_t{1} << nd;

  auto expand = [&](std::size_t compact, const std::vector<int>& bitpos) {
    // compact's bit i corresponds to position i in the (msb-first) sublist.
    std::size_t full = 0;
    const int m = static_cast<int>(bitpos.size());
    for (int i = 0; i < m; ++i)
      if (compact & (std::size_t{1} << (m - 1 - i))) full |= std::size_t{1} << bitpos[static_cast<std::size_t>(i)];
    return full;
  };

  Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_k),
                                                 static_cast<Eigen::Index>(dim_k));
  for (std::size_t i = 0; i < dim_k; ++i) {
    std::size_t fi = expand(i, keep_bitpos);
    for (std::size_t j = 0; j < dim_k; ++j) {
      std::size_t fj = expand(j, keep_bitpos);
      Cd acc{0.0, 0.0};
      for (std::size_t d = 0; d < dim_d; ++d) {
        std::size_t fd = expand(d, drop_bitpos);
        acc += mat_(static_cast<Eigen::Index>(fi | fd), static_cast<Eigen::Index>(fj | fd));
      }
      next(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  mat_ = std::move(next);
  qubits_ = std::move(new_qubits);
}

double DensityMatrix::hermiticity_error() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      Cd(0.5, 0.0) * (mat_ + mat_.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("trace_distance: dimension mismatch");
  const int n = a.num_qubits();
  // Align b's tensor order to a's: by label when the label sets coincide,
  // positionally otherwise.
  bool same_labels = true;
  for (int label : a.live_qubits()) {
    if (std::find(b.live_qubits().begin(), b.live_qubits().end(), label) ==
        b.live_qubits().end())
      same_labels = false;
  }
  std::vector<int> b_bitpos(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos) {
    const int b_pos =
        same_labels ? b.position_of(a.live_qubits()[static_cast<std::size_t>(pos)]) : pos;
    b_bitpos[static_cast<std::size_t>(n - 1 - pos)] = n - 1 - b_pos;
  }
  const Eigen::Index dim = a.matrix().rows();
  auto to_b = [&](std::size_t ia) {
    std::size_t ib = 0;
    for (int bp = 0; bp < n; ++bp)
      if (ia & (std::size_t{1} << bp)) ib |= std::size_t{1} << b_bitpos[static_cast<std::size_t>(bp)];
    return static_cast<Eigen::Index>(ib);
  };
  Eigen::MatrixXcd diff(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      diff(i, j) = a.matrix()(i, j) -
                   b.matrix()(to_b(static_cast<std::size_t>(i)), to_b(static_cast<std::size_t>(j)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Cd(0.5, 0.0) * (diff + diff.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix reduced_density(const Statevector& sv, std::span<const int> keep) {
  DensityMatrix full = DensityMatrix::from_statevector(sv);
  std::vector<int> discard;
  for (int q : sv.live_qubits())
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) discard.push_back(q);
  full.partial_trace(discard);
  return full;
}

}  // namespace teleprep::sim
