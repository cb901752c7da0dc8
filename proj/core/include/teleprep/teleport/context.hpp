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

#include <map>
#include <optional>

#include "teleprep/cost/ledger.hpp"
#include "teleprep/sim/statevector.hpp"

namespace teleprep::teleport {

/// Where measurement outcomes come from.
///  - kBorn samples the simulator's Born distribution with the run rng.
///  - kLedgerOnly runs without a statevector: outcomes are fair rng bits
///    (all protocol measurements here are uniform), only ledgers advance.
///  - Branch-forcing for exhaustive tests is done by passing a script.
class ExecutionContext {
 public:
  /// Full simulation.
  ExecutionContext(sim::Statevector& state, Rng& rng)
      : state_(&state), rng_(&rng) {}
  /// Ledger-only: no state, outcomes are rng bits. `label_base` keeps the
  /// invented labels clear of any other label space the recorder sees.
  explicit ExecutionContext(Rng& rng, int label_base = 0)
      : next_ledger_only_label_(label_base), state_(nullptr), rng_(&rng) {}

  bool has_state() const { return state_ != nullptr; }
  sim::Statevector& state();

  /// Scripted outcomes override sampling (consumed in order). Postselection
  /// keeps the run on the requested branch; exhaustive tests sweep scripts.
  void set_outcome_script(std::vector<int> bits);
  bool script_exhausted() const { return script_ && script_pos_ == script_->size(); }

  void set_recorder(cost::LedgerRecorder* rec) { recorder_ = rec; }
  cost::LedgerRecorder* recorder() const { return recorder_; }

  std::vector<int> alloc(int count, std::string_view initial);
  void gate(circuit::Gate g, std::span<const int> labels);
  void gate(circuit::Gate g, std::initializer_list<int> labels) {
    gate(g, std::span<const int>(labels.begin(), labels.size()));
  }
  void mcz(std::span<const int> labels);
  void apply_pauli(const pauli::PauliString& p, std::span<const int> labels);
  int measure(int label, sim::Basis basis);
  void discard_zero(int label);

  /// Runs a lowered op sequence with op-index q mapped to labels[q] for the
  /// main register; ancilla indices allocate fresh |0> qubits for the run.
  void run_lowered(std::span<const circuit::CircuitOp> ops, std::span<const int> labels,
                   int main_width);

  const std::vector<sim::MeasurementOutcome>& outcomes() const { return outcomes_; }

  Rng& rng() { return *rng_; }

 private:
  int next_ledger_only_label_ = 0;
  sim::Statevector* state_;
  Rng* rng_;
  cost::LedgerRecorder* recorder_ = nullptr;
  std::optional<std::vector<int>> script_;
  std::size_t script_pos_ = 0;
  std::vector<sim::MeasurementOutcome> outcomes_;
};

}  // namespace teleprep::teleport
