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

#include <vector>

#include "teleprep/sim/density_matrix.hpp"

namespace teleprep::dme {

/// Copy-budget parameters: applying exp(-i*t*rho) to accuracy eps consumes
/// m = ceil(budget_constant * t^2 / eps) copies of rho. The constant is
/// calibrated once by the test suite over C in {0.25, 0.5, 1, 2, 4} on a
/// fixed probe set; 1.0 is the frozen result.
struct DmeConfig {
  double t = 0.0;
  int m = 1;
  double budget_constant = kCalibratedBudgetConstant;

  static constexpr double kCalibratedBudgetConstant = 1.0;
};

/// Consumes m fresh copies of rho through partial swaps at angle t/m,
/// approximating target -> exp(-i*t*rho) target exp(+i*t*rho).
sim::DensityMatrix dme_apply(const sim::DensityMatrix& target, const sim::DensityMatrix& rho,
                             double t, int m);

/// Dense exp(-i*t*rho) by eigendecomposition (width <= 6): the scaling oracle.
Eigen::MatrixXcd exact_exponential(const sim::DensityMatrix& rho, double t);

/// Reflection about |b>: R = I - 2|b><b| = exp(-i*pi*|b><b|), realized by
/// consuming ceil(C*pi^2/eps) copies of |b><b|.
sim::DensityMatrix reflection_via_dme(const sim::DensityMatrix& target, const sim::Statevector& b,
                                      double eps, const DmeConfig& config);

/// Normalized-state encoding of a Hamiltonian: rho = (h + c I)/tr(h + c I)
/// with the returned t_scale = tr(h + c I), so simulating h for time t means
/// running dme for time t * t_scale. Throws (reporting the minimal valid c)
/// if h + c I is not positive semidefinite.
struct HamiltonianEncoding {
  sim::DensityMatrix rho;
  double t_scale = 0.0;
};
HamiltonianEncoding hamiltonian_to_state(const Eigen::MatrixXcd& h, double c);

/// Total copies of |b> to support q reflection calls at overall accuracy eps:
/// each call runs at eps/q, so q * ceil(C * pi^2 * q / eps).
std::uint64_t reflection_budget(int q, double eps, double c);

/// Mean trace-distance error against the exact conjugation per copy count.
struct SweepRow {
  int m = 0;
  double t = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;
  int n_probes = 0;
  std::uint64_t seed = 0;
};
std::vector<SweepRow> error_sweep(const sim::DensityMatrix& rho, double t,
                                  const std::vector<int>& m_values,
                                  const std::vector<sim::DensityMatrix>& probes,
                                  std::uint64_t seed);

/// CSV emission with header `m,t,mean_error,std_error,n_probes,seed`.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Random pure state / density matrix helpers (Gaussian amplitudes).
sim::Statevector random_pure_state(int n, Rng& rng);
sim::DensityMatrix random_pure_density(int n, Rng& rng);

}  // namespace teleprep::dme
