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

#include "teleprep/dme/dme.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "teleprep/common/errors.hpp"

namespace teleprep::dme {

using sim::DensityMatrix;
using sim::Statevector;

DensityMatrix dme_apply(const DensityMatrix& target, const DensityMatrix& rho, double t, int m) {
  if (target.num_qubits() != rho.num_qubits())
    throw UsageError("dme_apply: rho and target width mismatch");
  if (target.num_qubits() > 4)
    throw UsageError("dme_apply: width capped at 4 target qubits (8 with the copy register)");
  if (m < 1) throw UsageError("dme_apply: m must be >= 1");

  DensityMatrix state = target;
  const std::vector<int> data = state.live_qubits();
  const double angle = t / m;
  for (int step = 0; step < m; ++step) {
    auto remap = state.absorb(rho);
    std::vector<int> copy;
    copy.reserve(rho.live_qubits().size());
    for (int q : rho.live_qubits()) copy.push_back(remap.at(q));
    state.partial_swap(copy, data, angle);
    state.partial_trace(copy);
  }
  return state;
}

Eigen::MatrixXcd exact_exponential(const DensityMatrix& rho, double t) {
  if (rho.num_qubits() > 6) throw UsageError("exact_exponential: width too large (max 6)");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  if (es.info() != Eigen::Success) throw InternalError("exact_exponential: eigensolver failed");
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    const double lam = es.eigenvalues()(i);
    phases(i) = std::complex<double>(std::cos(t * lam), -std::sin(t * lam));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix reflection_via_dme(const DensityMatrix& target, const Statevector& b, double eps,
                                 const DmeConfig& config) {
  if (eps <= 0) throw UsageError("reflection_via_dme: eps must be positive");
  const double pi = std::numbers::pi;
  const int m = static_cast<int>(std::ceil(config.budget_constant * pi * pi / eps));
  return dme_apply(target, DensityMatrix::from_statevector(b), pi, std::max(m, 1));
}

HamiltonianEncoding hamiltonian_to_state(const Eigen::MatrixXcd& h, double c) {
  if (h.rows() != h.cols()) throw UsageError("hamiltonian_to_state: h must be square");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw UsageError("hamiltonian_to_state: h must be Hermitian");
  Eigen::MatrixXcd shifted = h + c * Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(shifted, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    const double minimal_c = c - min_eig;
    throw UsageError("hamiltonian_to_state: h + c*I is not positive semidefinite; "
                     "smallest valid c is " +
                     std::to_string(minimal_c));
  }
  const double trace = shifted.trace().real();
  if (trace <= 0) throw UsageError("hamiltonian_to_state: tr(h + c*I) must be positive");
  HamiltonianEncoding enc;
  enc.rho = DensityMatrix::from_matrix(shifted / trace);
  enc.t_scale = trace;
  return enc;
}

std::uint64_t reflection_budget(int q, double eps, double c) {
  if (q < 1) throw UsageError("reflection_budget: q must be >= 1");
  if (eps <= 0) throw UsageError("reflection_budget: eps must be positive");
  if (c <= 0) throw UsageError("reflection_budget: budget constant must be positive");
  const double pi = std::numbers::pi;
  const double per_call = std::ceil(c * pi * pi * q / eps);
  return static_cast<std::uint64_t>(q) * static_cast<std::uint64_t>(per_call);
}

std::vector<SweepRow> error_sweep(const DensityMatrix& rho, double t,
                                  const std::vector<int>& m_values,
                                  const std::vector<DensityMatrix>& probes, std::uint64_t seed) {
  if (m_values.empty()) throw UsageError("error_sweep: no m values");
  if (probes.empty()) throw UsageError("error_sweep: no probes");

  const Eigen::MatrixXcd u = exact_exponential(rho, t);
  std::vector<SweepRow> rows;
  for (int m : m_values) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& probe : probes) {
      DensityMatrix exact = probe;
      exact.apply_unitary(u);
      const double err = sim::trace_distance(dme_apply(probe, rho, t, m), exact);
      sum += err;
      sum_sq += err * err;
    }
    const double npr = static_cast<double>(probes.size());
    SweepRow row;
    row.m = m;
    row.t = t;
    row.mean_error = sum / npr;
    const double var = std::max(0.0, sum_sq / npr - row.mean_error * row.mean_error);
    row.std_error = std::sqrt(var);
    row.n_probes = static_cast<int>(probes.size());
    row.seed = seed;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "m,t,mean_error,std_error,n_probes,seed\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%d,%llu\n", r.m, r.t, r.mean_error,
                  r.std_error, r.n_probes, static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

Statevector random_pure_state(int n, Rng& rng) {
  std::vector<Statevector::Amplitude> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {rng.next_gaussian(), rng.next_gaussian()};
  return Statevector::from_amplitudes(n, std::move(amps));
}

DensityMatrix random_pure_density(int n, Rng& rng) {
  return DensityMatrix::from_statevector(random_pure_state(n, rng));
}

}  // namespace teleprep::dme
