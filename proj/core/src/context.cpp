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

#include "teleprep/teleport/context.hpp"

#include <set>

#include "teleprep/common/errors.hpp"

namespace teleprep::teleport {

sim::Statevector& ExecutionContext::state() {
  if (!state_) throw InternalError("ExecutionContext: no statevector in ledger-only mode");
  return *state_;
}

void ExecutionContext::set_outcome_script(std::vector<int> bits) {
  script_ = std::move(bits);
  script_pos_ = 0;
}

std::vector<int> ExecutionContext::alloc(int count, std::string_view initial) {
  std::vector<int> labels;
  if (state_) {
    labels = state_->allocate(count, initial);
  } else {
    if (static_cast<int>(initial.size()) != count)
      throw UsageError("alloc: initial pattern length must equal count");
    for (int i = 0; i < count; ++i) labels.push_back(next_ledger_only_label_++);
  }
  if (recorder_) {
    recorder_->on_alloc(labels);
    // A |+> preparation costs one H on top of the free |0>.
    for (int i = 0; i < count; ++i)
      if (initial[static_cast<std::size_t>(i)] == '+')
        recorder_->on_gate(circuit::Gate::H, {&labels[static_cast<std::size_t>(i)], 1});
  }
  return labels;
}

void ExecutionContext::gate(circuit::Gate g, std::span<const int> labels) {
  if (state_) state_->apply_gate(g, labels);
  if (recorder_) recorder_->on_gate(g, labels);
}

void ExecutionContext::mcz(std::span<const int> labels) {
  if (state_) state_->apply_mcz(labels);
  if (recorder_) recorder_->on_mcz(labels);
}

void ExecutionContext::apply_pauli(const pauli::PauliString& p, std::span<const int> labels) {
  if (state_) state_->apply_pauli(p, labels);
  if (recorder_) {
    // Each nontrivial letter is one single-qubit Clifford gate.
    for (int q = 0; q < p.n; ++q)
      if (p.x(q) || p.z(q))
        recorder_->on_gate(p.x(q) ? circuit::Gate::X : circuit::Gate::Z,
                           {&labels[static_cast<std::size_t>(q)], 1});
  }
}

int ExecutionContext::measure(int label, sim::Basis basis) {
  int bit;
  if (script_ && script_pos_ < script_->size()) {
    const int forced = (*script_)[script_pos_++];
    if (state_) state_->postselect(label, basis, forced);
    bit = forced;
  } else if (state_) {
    bit = state_->measure(label, basis, *rng_).bit;
  } else {
    bit = rng_->next_bit();
  }
  if (recorder_) {
    if (basis == sim::Basis::X) recorder_->on_gate(circuit::Gate::H, {&label, 1});
    recorder_->on_measure(label);
  }
  outcomes_.push_back(sim::MeasurementOutcome{label, basis, bit});
  return bit;
}

void ExecutionContext::discard_zero(int label) {
  if (state_) state_->discard_zero(label);
  if (recorder_) recorder_->on_discard(label);
}

void ExecutionContext::run_lowered(std::span<const circuit::CircuitOp> ops,
                                   std::span<const int> labels, int main_width) {
  int max_index = main_width - 1;
  for (const auto& op : ops)
    for (int q : op.qubits) max_index = std::max(max_index, q);
  const int ancillas = max_index + 1 - main_width;

  std::vector<int> map(labels.begin(), labels.end());
  std::vector<int> fresh;
  if (ancillas > 0) {
    fresh = alloc(ancillas, std::string(static_cast<std::size_t>(ancillas), '0'));
    map.insert(map.end(), fresh.begin(), fresh.end());
  }

  std::map<int, int> keyed_bits;
  std::set<int> retired;
  for (const auto& op : ops) {
    std::vector<int> qs;
    qs.reserve(op.qubits.size());
    for (int q : op.qubits) qs.push_back(map[static_cast<std::size_t>(q)]);
    switch (op.kind) {
      case circuit::CircuitOp::Kind::kGate:
        gate(op.gate, qs);
        break;
      case circuit::CircuitOp::Kind::kMeasure:
        keyed_bits[op.key] = measure(qs[0], sim::Basis::Z);
        retired.insert(qs[0]);
        break;
      case circuit::CircuitOp::Kind::kCondGate:
        if (keyed_bits.count(op.key) == 0)
          throw UsageError("run_lowered: condition key measured nowhere");
        if (keyed_bits[op.key] == 1) gate(op.gate, qs);
        break;
    }
  }
  // Any ancilla the sequence did not consume must be back in |0>.
  for (int a : fresh)
    if (retired.count(a) == 0) discard_zero(a);
}

}  // namespace teleprep::teleport
