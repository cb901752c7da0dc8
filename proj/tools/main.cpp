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

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>

#include "teleprep/common/errors.hpp"
#include "teleprep/cost/report.hpp"
#include "teleprep/dme/dme.hpp"
#include "teleprep/protocol/zk_protocol.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace teleprep;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

// ---------------------------------------------------------------------------
// Envelope: which parameter ranges are statevector-verifiable on this
// machine. Ships as data; TP_ENVELOPE overrides the path.

struct Envelope {
  int teleport_verify_max_n = 5;
  int zk_verify_max_n = 3;
  int zk_verify_max_k = 3;
};

Envelope load_envelope() {
  Envelope env;
  std::filesystem::path path;
  if (const char* override_path = std::getenv("TP_ENVELOPE")) {
    path = override_path;
  } else if (std::filesystem::exists("data/envelope.json")) {
    path = "data/envelope.json";
  } else {
    return env;  // built-in defaults
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open envelope file: " + path.string());
  json j = json::parse(in, nullptr, /*allow_exceptions=*/true);
  env.teleport_verify_max_n = j.value("teleport_verify_max_n", env.teleport_verify_max_n);
  env.zk_verify_max_n = j.value("zk_verify_max_n", env.zk_verify_max_n);
  env.zk_verify_max_k = j.value("zk_verify_max_k", env.zk_verify_max_k);
  return env;
}

// ---------------------------------------------------------------------------
// Serialization helpers.

json ledger_to_json(const cost::GateCountLedger& l) {
  json j;
  j["clifford_1q"] = l.clifford_1q;
  j["clifford_2q"] = l.clifford_2q;
  j["t"] = l.t_count;
  j["measurements"] = l.measurements;
  j["identity_ticks"] = l.identity_ticks;
  j["depth"] = l.depth;
  j["peak_width"] = l.peak_width;
  return j;
}

json fit_to_json(const cost::ScalingFit& f) {
  json j;
  j["exponent"] = f.exponent;
  j["intercept"] = f.intercept;
  j["r_squared"] = f.r_squared;
  return j;
}

json outcomes_to_json(const std::vector<sim::MeasurementOutcome>& outs) {
  json arr = json::array();
  for (const auto& m : outs) {
    std::string line = std::to_string(m.qubit);
    line += ',';
    line += sim::basis_name(m.basis);
    line += ',';
    line += std::to_string(m.bit);
    arr.push_back(line);
  }
  return arr;
}

void write_file(const std::string& path, const std::string& content, bool force) {
  if (!force && std::filesystem::exists(path))
    throw UsageError("refusing to overwrite '" + path + "' without --force");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Subcommands.

struct CommonFlags {
  int n = 2, k = 2, a = 1, trials = 1;
  std::uint64_t seed = 1;
  double t = std::numbers::pi;
  double eps = 0.1;
  std::string out;
  std::string format = "json";
  bool force = false;
  bool require_verify = false;
};

int cmd_teleport(const CommonFlags& flags, const Envelope& env) {
  if (flags.n < 1 || flags.n > env.teleport_verify_max_n)
    throw UsageError("teleport: --n must be in [1, " +
                     std::to_string(env.teleport_verify_max_n) + "] for statevector verification");
  if (flags.trials < 1) throw UsageError("teleport: --trials must be >= 1");
  if (flags.format != "json") throw UsageError("teleport: only --format json is supported");

  auto bench = cost::clifford_teleport_bench(flags.n, flags.trials, flags.seed, true);
  const bool ok = bench.max_trace_distance >= 0 && bench.max_trace_distance < 1e-10;

  json report;
  report["command"] = "teleport";
  report["n"] = flags.n;
  report["trials"] = flags.trials;
  report["seed"] = flags.seed;
  report["unitary"] = "random clifford generator circuit, length 5*n^2";
  report["max_trace_distance"] = bench.max_trace_distance;
  report["verified"] = ok;
  report["ledgers"]["consume"] = ledger_to_json(bench.consume);
  report["ledgers"]["prep"] = ledger_to_json(bench.prep);

  std::string text = dump(report);
  if (!flags.out.empty()) write_file(flags.out, text, flags.force);
  std::cout << text;
  return ok ? kExitOk : kExitVerifyFailure;
}

pauli::ZkElement full_level_element(int n, int k, Rng& rng) {
  // Redraw until the sampled element actually reaches level k, so the
  // requested descent depth stays valid.
  for (int attempt = 0; attempt < 4096; ++attempt) {
    pauli::ZkElement u = pauli::random_zk(n, k, rng);
    if (pauli::zk_level(u) == k) return u;
  }
  throw InternalError("full_level_element: sampling failed");
}

int cmd_zk_run(const CommonFlags& flags, const Envelope& env) {
  if (!(1 <= flags.a && flags.a < flags.k && flags.k <= flags.n))
    throw UsageError("zk-run: need 1 <= a < k <= n");
  if (flags.trials < 1) throw UsageError("zk-run: --trials must be >= 1");
  if (flags.format != "json") throw UsageError("zk-run: only --format json is supported");

  const bool verify = flags.n <= env.zk_verify_max_n && flags.k <= env.zk_verify_max_k;
  if (!verify && flags.require_verify)
    throw UsageError("zk-run: (n,k) outside the verification envelope and --require-verify set");
  if (!verify)
    std::cerr << "warning: (n,k) outside the verification envelope; running ledger-only\n";

  bool all_ok = true;
  json runs = json::array();
  for (int trial = 0; trial < flags.trials; ++trial) {
    Rng rng(Rng::child_seed(flags.seed, static_cast<std::uint64_t>(trial)));
    pauli::ZkElement u = full_level_element(flags.n, flags.k, rng);

    protocol::PrecomputeOptions popt;
    popt.simulate = verify;
    auto resource = protocol::precompute_resource(u, flags.a, rng, popt);

    protocol::ProtocolResult result;
    double distance = -1.0;
    if (verify) {
      sim::Statevector input = dme::random_pure_state(flags.n, rng);
      sim::Statevector direct = input;
      protocol::apply_diagonal(direct, direct.live_qubits(), u);
      result = protocol::consume(resource, std::move(input), rng);
      distance = sim::Statevector::trace_distance(*result.state, direct);
      if (distance > 1e-9) all_ok = false;
    } else {
      result = protocol::consume_ledger_only(resource, rng);
    }
    if (result.residual_level > flags.k - flags.a) all_ok = false;

    json record;
    record["u"] = u.to_text();
    record["n"] = flags.n;
    record["k"] = flags.k;
    record["a"] = flags.a;
    record["seed"] = Rng::child_seed(flags.seed, static_cast<std::uint64_t>(trial));
    record["outcomes"] = outcomes_to_json(result.transcript.outcomes);
    record["choices"] = result.transcript.choices;
    record["residual"] = result.residual.to_text();
    record["residual_level"] = result.residual_level;
    record["final_pauli"] = result.final_pauli.to_text();
    record["ledgers"]["consume"] = ledger_to_json(result.consume_ledger);
    record["ledgers"]["prep"] = ledger_to_json(resource.prep_ledger);
    record["ledgers"]["classical_ops"] = result.classical_op_count;
    record["ledgers"]["consume_analytic_depth"] = result.consume_analytic_depth;
    record["resource_width"] = resource.resource_width();
    record["verified"] = verify;
    record["trace_distance_to_direct"] = distance;
    record["task"]["early_input"] = "classical description of u (and n, k, a)";
    record["task"]["late_input"] = "the n-qubit input state and the run seed";
    record["task"]["outputs"] = "quantum: u applied to the input; classical: the transcript";
    runs.push_back(std::move(record));
  }

  json report = (flags.trials == 1) ? runs[0] : json{{"runs", runs}};
  std::string text = dump(report);
  if (!flags.out.empty()) write_file(flags.out, text, flags.force);
  std::cout << text;
  return all_ok ? kExitOk : kExitVerifyFailure;
}

int cmd_dme_sweep(const CommonFlags& flags) {
  if (flags.trials < 1) throw UsageError("dme-sweep: --trials must be >= 1");
  Rng rng(flags.seed);
  auto rho = dme::random_pure_density(1, rng);
  std::vector<sim::DensityMatrix> probes;
  for (int i = 0; i < 5; ++i) probes.push_back(dme::random_pure_density(1, rng));
  const std::vector<int> m_values{50, 100, 200, 400, 800, 1600};

  auto rows = dme::error_sweep(rho, flags.t, m_values, probes, flags.seed);
  std::string csv = dme::sweep_to_csv(rows);

  json summary;
  summary["command"] = "dme-sweep";
  summary["t"] = flags.t;
  summary["seed"] = flags.seed;
  summary["m_values"] = m_values;
  summary["n_probes"] = static_cast<int>(probes.size());
  summary["budget_constant"] = dme::DmeConfig::kCalibratedBudgetConstant;
  summary["copies_for_eps"] = dme::reflection_budget(1, flags.eps, 1.0);

  bool all_tiny = true;
  for (const auto& r : rows) all_tiny = all_tiny && r.mean_error < 1e-12;
  if (all_tiny) {
    summary["slope"] = nullptr;
    summary["note"] = "errors at numerical zero; no slope fit";
  } else {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(r.m, r.mean_error);
    auto fit = cost::fit_scaling(pts);
    summary["slope"] = fit.exponent;
    summary["r_squared"] = fit.r_squared;
  }

  if (!flags.out.empty()) {
    write_file(flags.out, csv, flags.force);
    write_file(flags.out + ".json", dump(summary), flags.force);
  }
  if (flags.format == "csv")
    std::cout << csv;
  else
    std::cout << dump(summary);
  return kExitOk;
}

std::vector<int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  std::vector<int> values;
  if (dots == std::string::npos) {
    values.push_back(std::stoi(text));
    return values;
  }
  const int lo = std::stoi(text.substr(0, dots));
  const int hi = std::stoi(text.substr(dots + 2));
  for (int n = lo; n <= hi; ++n) values.push_back(n);
  return values;
}

int cmd_cost_table(const CommonFlags& flags, const std::string& n_range, const Envelope& env) {
  std::vector<int> n_values;
  try {
    n_values = parse_range(n_range);
  } catch (const std::exception&) {
    throw UsageError("cost-table: --n expects an integer or a range like 2..8");
  }
  if (n_values.empty()) throw UsageError("cost-table: empty n range");
  if (flags.trials < 1) throw UsageError("cost-table: --trials must be >= 1");
  if (!(1 <= flags.a && flags.a < flags.k))
    throw UsageError("cost-table: need 1 <= a < k");

  auto report = cost::table1_report(n_values, flags.k, flags.a, flags.seed, flags.trials,
                                    env.zk_verify_max_n, env.zk_verify_max_k);
  std::string csv = cost::table1_to_csv(report);

  json j;
  j["command"] = "cost-table";
  j["k"] = flags.k;
  j["a"] = flags.a;
  j["seed"] = flags.seed;
  j["trials"] = flags.trials;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["n"] = row.n;
    r["ledger_only"] = row.ledger_only;
    r["standard"] = ledger_to_json(row.standard_ledger);
    r["consume"] = ledger_to_json(row.consume_ledger);
    r["prep"] = ledger_to_json(row.prep_ledger);
    r["resource_width"] = row.resource_width;
    r["classical_ops"] = row.classical_ops;
    r["max_trace_distance"] = row.max_trace_distance;
    j["rows"].push_back(std::move(r));
  }
  if (report.rows.size() >= 3) {
    j["fits"]["standard_gates"] = fit_to_json(report.standard_fit);
    j["fits"]["consume_events"] = fit_to_json(report.consume_fit);
    j["fits"]["prep_events"] = fit_to_json(report.prep_fit);
    j["fits"]["classical_ops"] = fit_to_json(report.classical_fit);
    j["fits"]["resource_width"] = fit_to_json(report.width_fit);
  }

  if (!flags.out.empty()) {
    write_file(flags.out + ".csv", csv, flags.force);
    write_file(flags.out + ".json", dump(j), flags.force);
  }
  if (flags.format == "csv")
    std::cout << csv;
  else
    std::cout << dump(j);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest: byproduct-table derivation, commutation suite, DME calibration.

bool selftest_byproduct_tables(bool inject_fault, std::ostream& log) {
  bool ok = true;
  // Destination teleportation: every branch of both settings.
  for (int choice = 0; choice < 2; ++choice) {
    for (int m1 = 0; m1 < 2; ++m1)
      for (int m2 = 0; m2 < 2; ++m2) {
        sim::Statevector sv = sim::Statevector::from_amplitudes(1, {{0.8, 0.0}, {0.36, 0.48}});
        sim::Statevector reference = sv;
        int src = sv.live_qubits()[0];
        auto extra = sv.allocate(3, "0++");
        Rng rng(0);
        teleport::ExecutionContext ctx(sv, rng);
        ctx.set_outcome_script({m1, m2});
        auto r = teleport::selective_destination_teleport(ctx, src, extra[1], extra[2], extra[0],
                                                          choice);
        auto [x, z] = teleport::destination_byproduct_bits(choice, m1, m2);
        if (inject_fault && choice == 0 && m1 == 1 && m2 == 0) x ^= 1;
        // Undo the table's byproduct; the chosen qubit must be the input.
        std::vector<int> chosen = {r.chosen};
        sv.apply_pauli(pauli::PauliString(1, static_cast<std::uint64_t>(x),
                                          static_cast<std::uint64_t>(z), 0)
                           .adjoint(),
                       chosen);
        auto reduced = sim::reduced_density(sv, chosen);
        auto want = sim::DensityMatrix::from_statevector(reference);
        if (sim::trace_distance(reduced, want) > 1e-10) {
          log << "selftest: destination table mismatch at choice=" << choice << " m1=" << m1
              << " m2=" << m2 << "\n";
          ok = false;
        }
      }
  }
  // Source teleportation branches.
  for (int choice = 0; choice < 2; ++choice) {
    for (int m1 = 0; m1 < 2; ++m1)
      for (int m2 = 0; m2 < 2; ++m2) {
        sim::Statevector alpha = sim::Statevector::from_amplitudes(1, {{0.8, 0.0}, {0.36, 0.48}});
        sim::Statevector beta = sim::Statevector::from_amplitudes(1, {{0.6, 0.0}, {-0.48, 0.64}});
        sim::Statevector want = (choice == 0) ? alpha : beta;
        sim::Statevector sv = alpha;
        int src_a = sv.live_qubits()[0];
        auto remap = sv.absorb(beta);
        int src_b = remap.begin()->second;
        int dest = sv.allocate(1, "0")[0];
        Rng rng(0);
        teleport::ExecutionContext ctx(sv, rng);
        ctx.set_outcome_script({m1, m2});
        teleport::selective_source_teleport(ctx, src_a, src_b, dest, choice);
        auto [x, z] = teleport::source_byproduct_bits(choice, m1, m2);
        sv.apply_pauli(pauli::PauliString(1, static_cast<std::uint64_t>(x),
                                          static_cast<std::uint64_t>(z), 0)
                           .adjoint(),
                       sv.live_qubits());
        if (sim::Statevector::trace_distance(sv, want) > 1e-10) {
          log << "selftest: source table mismatch at choice=" << choice << " m1=" << m1
              << " m2=" << m2 << "\n";
          ok = false;
        }
      }
  }
  return ok;
}

bool selftest_commutation(std::ostream& log) {
  Rng rng(20260811);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_index(4));
    const int k = 1 + static_cast<int>(rng.next_index(std::min(n, 4)));
    auto g = pauli::random_zk(n, k, rng);
    const std::uint64_t s = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
    auto gp = pauli::zk_conjugate_by_x(g, s);
    if (pauli::zk_level(gp) > std::max(0, k - 1)) {
      log << "selftest: level bound violated\n";
      return false;
    }
    if (n <= 4) {
      auto dg = pauli::zk_to_matrix(g);
      auto dgp = pauli::zk_to_matrix(gp);
      const std::size_t dim = dg.size();
      for (std::size_t b = 0; b < dim; ++b) {
        std::size_t bs = b;
        for (int q = 0; q < n; ++q)
          if ((s >> q) & 1u) bs ^= std::size_t{1} << (n - 1 - q);
        if (dg[bs] * dg[b] != dgp[b]) {
          log << "selftest: commutation identity violated\n";
          return false;
        }
      }
    }
  }
  return true;
}

bool selftest_dme(std::ostream& log) {
  Rng rng(5);
  for (int rep = 0; rep < 3; ++rep) {
    auto target = dme::random_pure_density(1, rng);
    auto b = dme::random_pure_state(1, rng);
    dme::DmeConfig config;
    auto out = dme::reflection_via_dme(target, b, 0.1, config);
    sim::DensityMatrix exact = target;
    exact.apply_unitary(
        dme::exact_exponential(sim::DensityMatrix::from_statevector(b), std::numbers::pi));
    if (sim::trace_distance(out, exact) > 0.1) {
      log << "selftest: dme calibration contract violated\n";
      return false;
    }
  }
  return true;
}

int cmd_selftest(bool inject_fault) {
  bool ok = selftest_byproduct_tables(inject_fault, std::cerr);
  ok = selftest_commutation(std::cerr) && ok;
  ok = selftest_dme(std::cerr) && ok;
  std::cout << (ok ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
  return ok ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"teleprep: teleportation-based quantum precomputation toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string n_range = "2..8";
  bool inject_fault = false;

  auto add_common = [&](CLI::App* cmd, bool with_nka) {
    if (with_nka) {
      cmd->add_option("--n", flags.n, "register width");
      cmd->add_option("--k", flags.k, "hierarchy level");
      cmd->add_option("--a", flags.a, "descent stop level");
    }
    cmd->add_option("--trials", flags.trials, "number of seeded trials");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--out", flags.out, "output file path");
    cmd->add_option("--format", flags.format, "stdout format: json or csv");
    cmd->add_flag("--force", flags.force, "overwrite existing output files");
  };

  auto* teleport_cmd = app.add_subcommand("teleport", "corrected Clifford gate teleportation");
  teleport_cmd->add_option("--n", flags.n, "register width");
  add_common(teleport_cmd, false);

  auto* zk_cmd = app.add_subcommand("zk-run", "diagonal-unitary cascade end to end");
  add_common(zk_cmd, true);
  zk_cmd->add_flag("--require-verify", flags.require_verify,
                   "fail instead of running ledger-only outside the envelope");

  auto* dme_cmd = app.add_subcommand("dme-sweep", "copy-budget error scaling sweep");
  dme_cmd->add_option("--t", flags.t, "evolution time");
  dme_cmd->add_option("--eps", flags.eps, "target accuracy (reported budget)");
  add_common(dme_cmd, false);

  auto* table_cmd = app.add_subcommand("cost-table", "per-size cost table with exponent fits");
  table_cmd->add_option("--n", n_range, "size range, e.g. 2..8");
  table_cmd->add_option("--k", flags.k, "hierarchy level");
  table_cmd->add_option("--a", flags.a, "descent stop level");
  add_common(table_cmd, false);

  auto* selftest_cmd = app.add_subcommand("selftest", "frozen-table and calibration checks");
  selftest_cmd->add_flag("--inject-table-fault", inject_fault)->group("");  // hidden test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Envelope env = load_envelope();
    if (app.got_subcommand(teleport_cmd)) return cmd_teleport(flags, env);
    if (app.got_subcommand(zk_cmd)) return cmd_zk_run(flags, env);
    if (app.got_subcommand(dme_cmd)) return cmd_dme_sweep(flags);
    if (app.got_subcommand(table_cmd)) return cmd_cost_table(flags, n_range, env);
    if (app.got_subcommand(selftest_cmd)) return cmd_selftest(inject_fault);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return kExitUsage;
}
