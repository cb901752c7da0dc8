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

#include "teleprep/cost/ledger.hpp"

#include <algorithm>

#include "teleprep/common/errors.hpp"
#include "teleprep/cost/mcz_decomposition.hpp"

namespace teleprep::cost {

GateCountLedger& GateCountLedger::merge(const GateCountLedger& other) {
  clifford_1q += other.clifford_1q;
  clifford_2q += other.clifford_2q;
  t_count += other.t_count;
  measurements += other.measurements;
  identity_ticks += other.identity_ticks;
  depth += other.depth;
  peak_width = std::max(peak_width, other.peak_width);
  return *this;
}

std::uint64_t LedgerRecorder::advance(std::span<const int> labels, std::uint64_t span_layers) {
  std::uint64_t start = 0;
  for (int q : labels) {
    auto it = busy_until_.find(q);
    if (it == busy_until_.end()) throw InternalError("LedgerRecorder: gate on unallocated qubit");
    start = std::max(start, it->second + 1);
  }
  if (start == 0) start = 1;
  const std::uint64_t end = start + span_layers - 1;
  for (int q : labels) {
    std::uint64_t& busy = busy_until_.at(q);
    if (ledger_) ledger_->identity_ticks += (start - 1) - busy;
    busy = end;
  }
  frontier_ = std::max(frontier_, end);
  return end;
}

void LedgerRecorder::on_alloc(std::span<const int> labels) {
  for (int q : labels) {
    // A fresh qubit starts ticking after the current frontier.
    busy_until_[q] = frontier_;
  }
  if (ledger_)
    ledger_->peak_width = std::max(ledger_->peak_width,
                                   static_cast<std::uint64_t>(busy_until_.size()));
}

void LedgerRecorder::on_gate(circuit::Gate g, std::span<const int> labels) {
  advance(labels, 1);
  if (ledger_) {
    if (circuit::is_t_like(g))
      ++ledger_->t_count;
    else if (circuit::is_two_qubit(g))
      ++ledger_->clifford_2q;
    else
      ++ledger_->clifford_1q;
  }
  if (global_events_) ++*global_events_;
}

void LedgerRecorder::on_mcz(std::span<const int> labels) {
  const MczCost c = mcz_cost(static_cast<int>(labels.size()));
  advance(labels, std::max<std::uint64_t>(c.depth, 1));
  if (ledger_) {
    ledger_->clifford_1q += c.clifford_1q;
    ledger_->clifford_2q += c.clifford_2q;
    ledger_->t_count += c.t_count;
    ledger_->measurements += c.measurements;
  }
  if (global_events_) *global_events_ += c.clifford_1q + c.clifford_2q + c.t_count + c.measurements;
}

void LedgerRecorder::on_measure(int label) {
  int q[1] = {label};
  advance(q, 1);
  busy_until_.erase(label);
  if (ledger_) ++ledger_->measurements;
  if (global_events_) ++*global_events_;
}

void LedgerRecorder::on_discard(int label) {
  // A deterministic |0> removal is charged like a measurement event.
  on_measure(label);
}

void LedgerRecorder::begin_constant_depth_block() {
  if (in_block_) throw InternalError("LedgerRecorder: nested constant-depth block");
  in_block_ = true;
  block_start_ = frontier_;
}

void LedgerRecorder::end_constant_depth_block() {
  if (!in_block_) throw InternalError("LedgerRecorder: no open constant-depth block");
  in_block_ = false;
  const std::uint64_t used = frontier_ - block_start_;
  if (used > 1) analytic_extra_ += used - 1;
}

void LedgerRecorder::finalize() {
  for (auto& [q, busy] : busy_until_) {
    if (ledger_) ledger_->identity_ticks += frontier_ - busy;
    busy = frontier_;
  }
  if (ledger_) ledger_->depth += frontier_;
}

std::uint64_t LedgerRecorder::analytic_depth() const { return frontier_ - analytic_extra_; }

}  // namespace teleprep::cost
