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

#include <Eigen/Dense>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "teleprep/sim/statevector.hpp"

namespace teleprep::sim {

/// Exact density-matrix state with the same label and tensor-order
/// conventions as Statevector (position 0 = most significant index bit).
class DensityMatrix {
 public:
  DensityMatrix() : mat_(Eigen::MatrixXcd::Ones(1, 1)) {}

  static DensityMatrix from_statevector(const Statevector& sv);
  /// Wraps a raw 2^n x 2^n matrix over n fresh qubits (validated square,
  /// power-of-two dimension).
  static DensityMatrix from_matrix(Eigen::MatrixXcd mat);

  std::vector<int> allocate(int count, std::string_view initial);

  /// Tensors `other` onto the less significant side; labels are remapped to
  /// stay unique and the old->new map is returned.
  std::unordered_map<int, int> absorb(const DensityMatrix& other);

  /// Conjugation by exp(-i*angle*SWAP) where SWAP exchanges regA[i] <-> regB[i].
  void partial_swap(std::span<const int> reg_a, std::span<const int> reg_b, double angle);

  /// Traces out the given qubits, leaving the reduced state on the rest.
  void partial_trace(std::span<const int> discard);

  void apply_unitary(const Eigen::MatrixXcd& u);

  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  const std::vector<int>& live_qubits() const { return qubits_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }

  double trace_real() const { return mat_.trace().real(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;

  int position_of(int qubit) const;

 private:
  Eigen::MatrixXcd mat_;
  std::vector<int> qubits_;
  int next_label_ = 0;
};

/// (1/2) * sum of singular values of (a - b). Requires the same live qubits;
/// any label-order difference is resolved before subtracting.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state of a pure statevector on the given qubits (in the given
/// order); used for recycling-soundness cross-checks.
DensityMatrix reduced_density(const Statevector& sv, std::span<const int> keep);

}  // namespace teleprep::sim
