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

#include "teleprep/pauli/zk_element.hpp"
#include "teleprep/teleport/gadgets.hpp"

namespace teleprep::protocol {

/// One staged selective-gate-teleportation group: the candidate correction
/// element (an iterated single-qubit derivative of u along `path`) teleported
/// against the identity.
struct CandidateGadget {
  std::uint64_t path = 0;  // qubit subset, |path| = layer depth
  pauli::ZkElement element;
};

/// Precomputed resource for applying u with a cascade that stops `stop_level`
/// layers down the hierarchy.
///
/// Gadget ancillas are lazily materialized at consume time; their preparation
/// cost is charged to prep_ledger here, with the layering continued across
/// gadgets so idle resource qubits keep accruing storage ticks.
struct LayeredResource {
  pauli::ZkElement u;
  int n = 0;
  int k = 0;
  int stop_level = 0;
  bool simulated = true;  // false: ledger-only resource (no base state)
  teleport::ResourceState base;
  std::vector<std::vector<CandidateGadget>> layers;  // layers[d] holds depth d+1
  std::map<std::uint64_t, pauli::ZkElement> candidate_memo;
  cost::GateCountLedger prep_ledger;
  std::uint64_t prep_analytic_depth = 0;
  std::uint64_t global_events = 0;  // shared gate-event counter (prep+consume)
  bool consumed = false;

  std::uint64_t resource_width() const;
};

struct ProtocolResult {
  std::optional<sim::Statevector> state;  // empty for ledger-only runs
  std::vector<int> data_labels;
  teleport::Transcript transcript;
  pauli::ZkElement residual;
  int residual_level = 0;
  pauli::PauliString final_pauli;
  cost::GateCountLedger consume_ledger;
  std::uint64_t consume_analytic_depth = 0;
  std::uint64_t classical_op_count = 0;
  std::uint64_t total_gate_events = 0;
  int residual_color_groups = 0;
};

struct PrecomputeOptions {
  bool simulate = true;  // false: count the base preparation without a state
};

/// Stages the base resource and all candidate gadget groups for the descent
/// layers 1..stop_level-1. Candidates are enumerated per qubit subset
/// (duplicate orderings of the same subset collapse; +/-I candidates are not
/// staged); every preparation cost lands in prep_ledger.
LayeredResource precompute_resource(const pauli::ZkElement& u, int stop_level, Rng& rng,
                                    const PrecomputeOptions& options = {});

struct ConsumeOptions {
  bool parallel_residual = false;
  /// When set, measurement outcomes are drawn from this script instead of the
  /// Born rule (exhaustive-branch testing).
  std::optional<std::vector<int>> outcome_script;
};

/// Runs the cascade against `input` (which must have width n): bell-measures
/// the base resource, fires the staged gadgets per the classical processing,
/// applies the residual directly and finishes with the final Pauli. The
/// resource is single-use.
ProtocolResult consume(LayeredResource& resource, sim::Statevector input, Rng& rng,
                       const ConsumeOptions& options = {});

/// Ledger-only cascade: same control flow and classical processing with
/// rng-bit outcomes and no statevector.
ProtocolResult consume_ledger_only(LayeredResource& resource, Rng& rng);

/// Pure replay of the classical side from a transcript: recomputes fire bits,
/// byproducts, residual and final Pauli. Bit-identical to what consume
/// computed for the same transcript.
struct ClassicalProcessingResult {
  pauli::ZkElement residual;
  pauli::PauliString final_pauli;
  std::uint64_t op_count = 0;
  std::vector<int> fire_bits;
};
ClassicalProcessingResult classical_outcome_processing(const pauli::ZkElement& u,
                                                       const teleport::Transcript& transcript,
                                                       int stop_level);

/// Applies a diagonal element to the register: serially term by term, or with
/// the monomials greedily colored into disjoint-support groups applied
/// transversally across fanned-out copies. Returns the number of groups the
/// parallel route used (1 when serial). The element's sign becomes global
/// phase.
int apply_residual_direct(teleport::ExecutionContext& ctx, std::span<const int> labels,
                          const pauli::ZkElement& residual, bool parallel);

/// Oracle-side helper: applies the element to a bare statevector.
void apply_diagonal(sim::Statevector& state, std::span<const int> labels,
                    const pauli::ZkElement& g);

/// Fanout: |i> -> |i>^(x m) on the computational basis via per-qubit CNOT
/// trees onto fresh |0> ancillas. copies[0] is the original register.
struct FanoutHandle {
  std::vector<std::vector<int>> copies;
  std::vector<std::vector<int>> tree_cnots;  // (control, target) pairs in order
};
FanoutHandle fanout(teleport::ExecutionContext& ctx, std::span<const int> reg, int m);
/// Exact inverse; ancillas are verified |0> and recycled.
void unfanout(teleport::ExecutionContext& ctx, const FanoutHandle& handle);

/// Greedy largest-first partition of the monomials into disjoint-support
/// groups.
std::vector<std::vector<std::uint64_t>> color_monomials(const pauli::ZkElement& g);

}  // namespace teleprep::protocol
