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

#include "teleprep/protocol/zk_protocol.hpp"

#include <algorithm>
#include <bit>

#include "teleprep/common/errors.hpp"

namespace teleprep::protocol {

using circuit::Gate;
using pauli::PauliString;
using pauli::ZkElement;
using teleport::ExecutionContext;

namespace {

int effective_level(const ZkElement& u) { return std::max(1, pauli::zk_level(u)); }

void validate_stop_level(const ZkElement& u, int a) {
  const int k = effective_level(u);
  const int max_a = std::max(1, k - 1);
  if (a < 1 || a > max_a)
    throw UsageError("stop level a must satisfy 1 <= a <= max(1, k-1)");
}

/// Iterated single-qubit derivative of u along the (sorted) qubits of `path`.
const ZkElement& candidate_for(std::map<std::uint64_t, ZkElement>& memo, const ZkElement& u,
                               std::uint64_t path) {
  auto it = memo.find(path);
  if (it != memo.end()) return it->second;
  ZkElement g = u;
  g.negative = false;  // derivatives never see the constant term
  for (int q = 0; q < u.n; ++q)
    if ((path >> q) & 1u) g = pauli::zk_conjugate_by_x(g, std::uint64_t{1} << q);
  return memo.emplace(path, std::move(g)).first->second;
}

/// Classical bookkeeping of the cascade. The physical state is maintained in
/// the normal form
///
///     state = P_acc * D * U|psi>,     D = residual_acc * prod_pending candidates,
///
/// with P_acc a Pauli word and D diagonal. A gadget that fires element E
/// behind a Pauli word Q costs the commutation E Q = Q * (X_q E X_q E^dag) * E
/// with q the X support of Q; the emitted derivative factorizes exactly into
/// iterated-derivative candidates, which go to the pending map (staged sizes)
/// or fold into residual_acc.
///
/// op_count semantics: one packed-monomial-mask XOR per nontrivial candidate
/// folded into the running correction (its cost is the mask payload of the
/// candidate's level), one bit update per pending toggle. Pure sign
/// bookkeeping commutes to the end for free, and candidate elements
/// themselves are precomputable from u alone, so neither is charged.
class CascadeProcessor {
 public:
  CascadeProcessor(const ZkElement& u, int a, std::map<std::uint64_t, ZkElement>& memo)
      : u_(u), a_(a), k_eff_(effective_level(u)), memo_(memo),
        p_acc_(PauliString::identity(u.n)),
        residual_acc_(ZkElement::identity(u.n, std::max(0, effective_level(u) - a))) {}

  void on_base(std::uint64_t x_bits, std::uint64_t z_bits) {
    p_acc_ = PauliString(u_.n, x_bits, z_bits, 0);
    fold_derivative(/*base_path=*/0, x_bits);
  }

  int fire_bit(std::uint64_t path) const {
    auto it = pending_.find(path);
    return it == pending_.end() ? 0 : it->second;
  }

  void on_gadget(std::uint64_t path, const ZkElement& element, int fired, const PauliString& p1,
                 const PauliString& p2) {
    (void)element;
    PauliString pm = pauli::pauli_multiply(p2, p_acc_);
    if (fired) {
      if (fire_bit(path) != 1) throw InternalError("cascade: fired an unneeded gadget");
      toggle_pending(path);  // the gadget's element cancels its pending entry
      fold_derivative(path, pm.x_bits);
    }
    p_acc_ = pauli::pauli_multiply(p1, pm);
  }

  /// Residual to apply first (conjugated past P_acc), final Pauli second.
  void finish(ZkElement& residual, PauliString& final_pauli) {
    for (const auto& [path, parity] : pending_)
      if (parity != 0) throw InternalError("cascade: pending correction below the stop level");
    ZkElement shift = pauli::zk_conjugate_by_x(residual_acc_, p_acc_.x_bits);
    charge_fold(shift);
    residual = pauli::zk_multiply(residual_acc_, shift);
    final_pauli = p_acc_.adjoint();
  }

  std::uint64_t op_count() const { return ops_; }

 private:
  /// Commuting X over `cross_mask` past the candidate at `base_path` emits
  /// exactly the iterated derivatives along base_path extended by each
  /// nonempty subset of the crossing support. Staged sizes update the pending
  /// parities; everything else folds into residual_acc.
  void fold_derivative(std::uint64_t base_path, std::uint64_t cross_mask) {
    const std::uint64_t free_mask = cross_mask & ~base_path;
    const int base_size = std::popcount(base_path);
    const int max_extra = std::min(k_eff_ - base_size, std::popcount(free_mask));
    if (max_extra <= 0) return;
    for (std::uint64_t t = free_mask; t != 0; t = (t - 1) & free_mask) {
      if (std::popcount(t) > max_extra) continue;
      const std::uint64_t path = base_path | t;
      const ZkElement& cand = candidate_for(memo_, u_, path);
      if (cand.is_identity()) continue;
      if (!cand.is_sign_only() && std::popcount(path) <= a_ - 1) {
        toggle_pending(path);
        continue;
      }
      charge_fold(cand);
      residual_acc_ = pauli::zk_multiply(residual_acc_, cand);
    }
  }

  void toggle_pending(std::uint64_t path) {
    ++ops_;
    int& parity = pending_[path];
    parity ^= 1;
  }

  void charge_fold(const ZkElement& e) {
    if (e.is_sign_only()) return;  // sign bookkeeping rides along for free
    const int level = std::min(pauli::zk_level(e), u_.n);
    ops_ += ZkElement::packed_bit_count(u_.n, level) - 1;  // mask payload
  }

  const ZkElement& u_;
  int a_;
  int k_eff_;
  std::map<std::uint64_t, ZkElement>& memo_;
  PauliString p_acc_;
  ZkElement residual_acc_;
  std::map<std::uint64_t, int> pending_;
  std::uint64_t ops_ = 0;
};

/// Ancilla columns of one staged gadget group.
struct GadgetRegisters {
  std::vector<int> w1, w2, w3, w4;
};

/// Resource-side preparation of a gadget group: everything in the wiring that
/// does not touch the data register. The candidate element is diagonal, so it
/// commutes onto the |+> register ahead of time.
GadgetRegisters materialize_gadget(ExecutionContext& ctx, int n, const ZkElement& element) {
  GadgetRegisters regs;
  for (int i = 0; i < n; ++i) {
    auto q = ctx.alloc(4, "0++0");
    regs.w1.push_back(q[0]);
    regs.w2.push_back(q[1]);
    regs.w3.push_back(q[2]);
    regs.w4.push_back(q[3]);
  }
  for (int i = 0; i < n; ++i)
    ctx.gate(Gate::Cnot, {regs.w3[static_cast<std::size_t>(i)], regs.w1[static_cast<std::size_t>(i)]});
  // U_A = element on the w2 register, U_B = identity on w3.
  for (std::uint64_t m : element.monomials) {
    std::vector<int> targets;
    for (int q = 0; q < n; ++q)
      if ((m >> q) & 1u) targets.push_back(regs.w2[static_cast<std::size_t>(q)]);
    ctx.mcz(targets);
  }
  for (int i = 0; i < n; ++i) {
    ctx.gate(Gate::Cnot, {regs.w2[static_cast<std::size_t>(i)], regs.w4[static_cast<std::size_t>(i)]});
    ctx.gate(Gate::Cnot, {regs.w3[static_cast<std::size_t>(i)], regs.w4[static_cast<std::size_t>(i)]});
  }
  return regs;
}

/// Run-time side of a gadget group: couple the data register in, measure per
/// the selection bit, hand the data role to w4.
void consume_gadget(ExecutionContext& ctx, std::vector<int>& data, const GadgetRegisters& regs,
                    int choice, PauliString& p1, PauliString& p2,
                    teleport::Transcript& transcript) {
  const int n = static_cast<int>(data.size());
  p1 = PauliString::identity(n);
  p2 = PauliString::identity(n);
  for (int i = 0; i < n; ++i) {
    ctx.gate(Gate::Cnot, {data[static_cast<std::size_t>(i)], regs.w1[static_cast<std::size_t>(i)]});
    ctx.gate(Gate::Cnot, {regs.w2[static_cast<std::size_t>(i)], data[static_cast<std::size_t>(i)]});
  }
  for (int i = 0; i < n; ++i) {
    int m1 = ctx.measure(data[static_cast<std::size_t>(i)], teleport::destination_basis_source(choice));
    int m2 = ctx.measure(regs.w1[static_cast<std::size_t>(i)], teleport::destination_basis_ancilla(choice));
    auto [x, z] = teleport::destination_byproduct_bits(choice, m1, m2);
    if (x) p2.x_bits |= std::uint64_t{1} << i;
    if (z) p2.z_bits |= std::uint64_t{1} << i;
  }
  for (int i = 0; i < n; ++i) {
    int m1 = ctx.measure(regs.w2[static_cast<std::size_t>(i)], teleport::source_basis_first(choice));
    int m2 = ctx.measure(regs.w3[static_cast<std::size_t>(i)], teleport::source_basis_second(choice));
    auto [x, z] = teleport::source_byproduct_bits(choice, m1, m2);
    if (x) p1.x_bits |= std::uint64_t{1} << i;
    if (z) p1.z_bits |= std::uint64_t{1} << i;
  }
  auto& outs = ctx.outcomes();
  transcript.outcomes.insert(transcript.outcomes.end(), outs.end() - 4 * n, outs.end());
  transcript.byproducts.push_back(p2);
  transcript.byproducts.push_back(p1);
  transcript.choices.push_back(choice);
  data = regs.w4;
}

}  // namespace

std::uint64_t LayeredResource::resource_width() const {
  std::uint64_t w = 2 * static_cast<std::uint64_t>(n);
  for (const auto& layer : layers) w += 4 * static_cast<std::uint64_t>(n) * layer.size();
  return w;
}

LayeredResource precompute_resource(const ZkElement& u, int stop_level, Rng& rng,
                                    const PrecomputeOptions& options) {
  (void)rng;  // preparation is measurement-free; the signature keeps the seeding explicit
  validate_stop_level(u, stop_level);

  LayeredResource res;
  res.u = u;
  res.n = u.n;
  res.k = effective_level(u);
  res.stop_level = stop_level;
  res.simulated = options.simulate;

  cost::LedgerRecorder prep_rec(&res.prep_ledger, &res.global_events);

  // Base resource: n bell pairs, u applied to the output halves.
  {
    Rng unused(0);
    auto build = [&](ExecutionContext& ctx) {
      ctx.set_recorder(&prep_rec);
      auto pairs = teleport::prepare_bell_pairs(ctx, res.n);
      for (auto [a, b] : pairs) {
        res.base.input_half.push_back(a);
        res.base.output_half.push_back(b);
      }
      for (std::uint64_t m : u.monomials) {
        std::vector<int> targets;
        for (int q = 0; q < res.n; ++q)
          if ((m >> q) & 1u) targets.push_back(res.base.output_half[static_cast<std::size_t>(q)]);
        ctx.mcz(targets);
      }
    };
    if (options.simulate) {
      ExecutionContext ctx(res.base.state, unused);
      build(ctx);
    } else {
      ExecutionContext ctx(unused, /*label_base=*/0);
      build(ctx);
    }
    res.base.n = res.n;
    res.base.unitary_tag = u.to_text();
  }

  // Staged gadget groups for layers 1..a-1, counted into the same recorder so
  // earlier resource qubits keep accruing storage ticks while later groups
  // are prepared serially. The run-wide event counter is detached here: these
  // gates execute (and count) at consume time when the gadgets materialize.
  prep_rec.set_global_events(nullptr);
  Rng unused(0);
  ExecutionContext count_ctx(unused, /*label_base=*/1 << 24);
  count_ctx.set_recorder(&prep_rec);
  for (int depth = 1; depth <= stop_level - 1; ++depth) {
    std::vector<CandidateGadget> layer;
    for (std::uint64_t path : pauli::enumerate_monomials(res.n, depth)) {
      if (std::popcount(path) != depth) continue;
      const ZkElement& cand = candidate_for(res.candidate_memo, u, path);
      if (cand.is_sign_only()) continue;
      layer.push_back(CandidateGadget{path, cand});
      materialize_gadget(count_ctx, res.n, cand);
    }
    res.layers.push_back(std::move(layer));
  }
  prep_rec.finalize();
  res.prep_analytic_depth = prep_rec.analytic_depth();
  return res;
}

namespace {

ProtocolResult consume_impl(LayeredResource& res, sim::Statevector* input, Rng& rng,
                            const ConsumeOptions& options) {
  if (res.consumed) throw UsageError("consume: resource already consumed (single use)");
  res.consumed = true;

  ProtocolResult out;
  cost::LedgerRecorder consume_rec(&out.consume_ledger, &res.global_events);

  sim::Statevector state;
  std::vector<int> input_labels;
  std::optional<ExecutionContext> ctx;
  if (input) {
    if (input->num_qubits() != res.n) throw UsageError("consume: input width must equal n");
    if (!res.simulated) throw UsageError("consume: resource was precomputed ledger-only");
    state = std::move(*input);
    input_labels = state.live_qubits();
    auto remap = state.absorb(res.base.state);
    res.base.remap_labels(remap);
    ctx.emplace(state, rng);
  } else {
    ctx.emplace(rng, /*label_base=*/1 << 20);
    input_labels = ctx->alloc(res.n, std::string(static_cast<std::size_t>(res.n), '0'));
  }
  if (options.outcome_script) ctx->set_outcome_script(*options.outcome_script);

  // Register the pre-existing qubits with the consume recorder.
  {
    std::vector<int> preexisting = input_labels;
    preexisting.insert(preexisting.end(), res.base.input_half.begin(), res.base.input_half.end());
    preexisting.insert(preexisting.end(), res.base.output_half.begin(), res.base.output_half.end());
    consume_rec.on_alloc(preexisting);
  }
  ctx->set_recorder(&consume_rec);

  CascadeProcessor proc(res.u, res.stop_level, res.candidate_memo);

  // (1) bell-measure the input against the base resource.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < res.n; ++i)
    pairs.emplace_back(input_labels[static_cast<std::size_t>(i)],
                       res.base.input_half[static_cast<std::size_t>(i)]);
  teleport::BellBits bits = teleport::bell_measure(*ctx, pairs, &out.transcript);
  out.transcript.byproducts.push_back(PauliString(res.n, bits.x_bits, bits.z_bits, 0));
  proc.on_base(bits.x_bits, bits.z_bits);

  std::vector<int> data = res.base.output_half;

  // (2)-(4) descend: materialize each staged gadget (prep side, already
  // charged), couple it in, fire it per the processor's pending parity.
  cost::GateCountLedger materialize_ledger;
  for (const auto& layer : res.layers) {
    for (const auto& gadget : layer) {
      const int fired = proc.fire_bit(gadget.path);
      GadgetRegisters regs;
      {
        cost::LedgerRecorder mat_rec(&materialize_ledger, &res.global_events);
        ctx->set_recorder(&mat_rec);
        regs = materialize_gadget(*ctx, res.n, gadget.element);
        mat_rec.finalize();
      }
      ctx->set_recorder(&consume_rec);
      {
        std::vector<int> fresh;
        for (const auto* col : {&regs.w1, &regs.w2, &regs.w3, &regs.w4})
          fresh.insert(fresh.end(), col->begin(), col->end());
        consume_rec.on_alloc(fresh);
      }
      PauliString p1, p2;
      consume_gadget(*ctx, data, regs, fired ? teleport::kChoiceA : teleport::kChoiceB, p1, p2,
                     out.transcript);
      proc.on_gadget(gadget.path, gadget.element, fired, p1, p2);
    }
  }

  // The double-charge guard: materialization must have executed exactly what
  // precompute charged (prep_ledger also covers the base preparation).
  if (materialize_ledger.total_events() >
      res.prep_ledger.total_events())
    throw InternalError("consume: gadget materialization exceeds the precompute charge");

  // (5)-(7) residual and final Pauli.
  proc.finish(out.residual, out.final_pauli);
  out.residual_level = pauli::zk_level(out.residual);
  if (out.residual_level > std::max(0, res.k - res.stop_level))
    throw InternalError("consume: residual level exceeds k - a");
  out.residual_color_groups =
      apply_residual_direct(*ctx, data, out.residual, options.parallel_residual);
  ctx->apply_pauli(out.final_pauli, data);

  consume_rec.finalize();
  out.consume_analytic_depth = consume_rec.analytic_depth();
  out.classical_op_count = proc.op_count();
  out.total_gate_events = res.global_events;
  out.data_labels = data;
  if (input) out.state = std::move(state);
  return out;
}

}  // namespace

ProtocolResult consume(LayeredResource& resource, sim::Statevector input, Rng& rng,
                       const ConsumeOptions& options) {
  return consume_impl(resource, &input, rng, options);
}

ProtocolResult consume_ledger_only(LayeredResource& resource, Rng& rng) {
  ConsumeOptions options;
  return consume_impl(resource, nullptr, rng, options);
}

ClassicalProcessingResult classical_outcome_processing(const ZkElement& u,
                                                       const teleport::Transcript& transcript,
                                                       int stop_level) {
  validate_stop_level(u, stop_level);
  const int n = u.n;
  std::map<std::uint64_t, ZkElement> memo;
  CascadeProcessor proc(u, stop_level, memo);

  // Expected outcome layout: 2n bell outcomes, then 4n per staged gadget.
  std::size_t cursor = 0;
  auto take = [&]() -> const sim::MeasurementOutcome& {
    if (cursor >= transcript.outcomes.size())
      throw UsageError("classical_outcome_processing: incomplete transcript");
    return transcript.outcomes[cursor++];
  };

  std::uint64_t x_bits = 0, z_bits = 0;
  for (int i = 0; i < n; ++i) {
    const auto& mz = take();  // control, X basis
    const auto& mx = take();  // target, Z basis
    if (mz.basis != sim::Basis::X || mx.basis != sim::Basis::Z)
      throw UsageError("classical_outcome_processing: unexpected bell measurement bases");
    if (mz.bit) z_bits |= std::uint64_t{1} << i;
    if (mx.bit) x_bits |= std::uint64_t{1} << i;
  }
  proc.on_base(x_bits, z_bits);

  ClassicalProcessingResult result;
  const int k = effective_level(u);
  (void)k;
  for (int depth = 1; depth <= stop_level - 1; ++depth) {
    for (std::uint64_t path : pauli::enumerate_monomials(n, depth)) {
      if (std::popcount(path) != depth) continue;
      const ZkElement& cand = candidate_for(memo, u, path);
      if (cand.is_sign_only()) continue;
      const int fired = proc.fire_bit(path);
      result.fire_bits.push_back(fired);
      const int choice = fired ? teleport::kChoiceA : teleport::kChoiceB;
      PauliString p1 = PauliString::identity(n), p2 = PauliString::identity(n);
      for (int i = 0; i < n; ++i) {
        int m1 = take().bit;
        int m2 = take().bit;
        auto [x, z] = teleport::destination_byproduct_bits(choice, m1, m2);
        if (x) p2.x_bits |= std::uint64_t{1} << i;
        if (z) p2.z_bits |= std::uint64_t{1} << i;
      }
      for (int i = 0; i < n; ++i) {
        int m1 = take().bit;
        int m2 = take().bit;
        auto [x, z] = teleport::source_byproduct_bits(choice, m1, m2);
        if (x) p1.x_bits |= std::uint64_t{1} << i;
        if (z) p1.z_bits |= std::uint64_t{1} << i;
      }
      proc.on_gadget(path, cand, fired, p1, p2);
    }
  }
  if (cursor != transcript.outcomes.size())
    throw UsageError("classical_outcome_processing: transcript has extra outcomes");

  proc.finish(result.residual, result.final_pauli);
  result.op_count = proc.op_count();
  return result;
}

std::vector<std::vector<std::uint64_t>> color_monomials(const ZkElement& g) {
  std::vector<std::uint64_t> sorted = g.monomials;
  std::sort(sorted.begin(), sorted.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<std::vector<std::uint64_t>> groups;
  std::vector<std::uint64_t> support;
  for (std::uint64_t m : sorted) {
    bool placed = false;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      if ((support[gi] & m) == 0) {
        groups[gi].push_back(m);
        support[gi] |= m;
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({m});
      support.push_back(m);
    }
  }
  return groups;
}

FanoutHandle fanout(ExecutionContext& ctx, std::span<const int> reg, int m) {
  if (m < 2) throw UsageError("fanout: m must be >= 2");
  FanoutHandle h;
  h.copies.resize(static_cast<std::size_t>(m));
  h.copies[0].assign(reg.begin(), reg.end());
  for (int c = 1; c < m; ++c)
    h.copies[static_cast<std::size_t>(c)] =
        ctx.alloc(static_cast<int>(reg.size()), std::string(reg.size(), '0'));

  if (ctx.recorder()) ctx.recorder()->begin_constant_depth_block();
  // Balanced doubling per qubit: sources made so far fan out in parallel.
  for (std::size_t q = 0; q < reg.size(); ++q) {
    int made = 1;
    while (made < m) {
      const int batch = std::min(made, m - made);
      for (int i = 0; i < batch; ++i) {
        int control = h.copies[static_cast<std::size_t>(i)][q];
        int target = h.copies[static_cast<std::size_t>(made + i)][q];
        ctx.gate(Gate::Cnot, {control, target});
        h.tree_cnots.push_back({control, target});
      }
      made += batch;
    }
  }
  if (ctx.recorder()) ctx.recorder()->end_constant_depth_block();
  return h;
}

void unfanout(ExecutionContext& ctx, const FanoutHandle& handle) {
  if (ctx.recorder()) ctx.recorder()->begin_constant_depth_block();
  for (auto it = handle.tree_cnots.rbegin(); it != handle.tree_cnots.rend(); ++it)
    ctx.gate(Gate::Cnot, {(*it)[0], (*it)[1]});
  if (ctx.recorder()) ctx.recorder()->end_constant_depth_block();
  for (std::size_t c = 1; c < handle.copies.size(); ++c)
    for (int q : handle.copies[c]) ctx.discard_zero(q);
}

int apply_residual_direct(ExecutionContext& ctx, std::span<const int> labels,
                          const ZkElement& residual, bool parallel) {
  if (static_cast<int>(labels.size()) != residual.n)
    throw UsageError("apply_residual_direct: width mismatch");
  if (residual.negative && ctx.has_state())
    ctx.state().multiply_global_phase({-1.0, 0.0});
  if (residual.monomials.empty()) return 0;

  auto apply_term = [&](std::uint64_t m, std::span<const int> reg) {
    std::vector<int> targets;
    for (int q = 0; q < residual.n; ++q)
      if ((m >> q) & 1u) targets.push_back(reg[static_cast<std::size_t>(q)]);
    ctx.mcz(targets);
  };

  auto groups = color_monomials(residual);
  if (!parallel || groups.size() < 2) {
    for (std::uint64_t m : residual.monomials) apply_term(m, labels);
    return static_cast<int>(groups.size());
  }

  FanoutHandle h = fanout(ctx, labels, static_cast<int>(groups.size()));
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (std::uint64_t m : groups[gi]) apply_term(m, h.copies[gi]);
  unfanout(ctx, h);
  return static_cast<int>(groups.size());
}

void apply_diagonal(sim::Statevector& state, std::span<const int> labels, const ZkElement& g) {
  if (static_cast<int>(labels.size()) != g.n) throw UsageError("apply_diagonal: width mismatch");
  if (g.negative) state.multiply_global_phase({-1.0, 0.0});
  for (std::uint64_t m : g.monomials) {
    std::vector<int> targets;
    for (int q = 0; q < g.n; ++q)
      if ((m >> q) & 1u) targets.push_back(labels[static_cast<std::size_t>(q)]);
    state.apply_mcz(targets);
  }
}

}  // namespace teleprep::protocol
