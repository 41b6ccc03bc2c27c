// Copyright 2026 The dmps Authors
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

// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails. Pass a criterion number to run only that
// one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dmps/ansatz.hpp"
#include "dmps/driver.hpp"
#include "dmps/fermion.hpp"
#include "dmps/gradient.hpp"
#include "dmps/random_circuit.hpp"
#include "dmps/statevector.hpp"
#include "dmps/worker_pool.hpp"

using namespace dmps;
namespace fs = std::filesystem;

namespace {

const std::string kData = DMPS_DATA_DIR;

// Criterion 1
constexpr int kOracleCircuits = 200;
constexpr std::size_t kOracleMaxGates = 60;
constexpr double kOracleFidelity = 1e-10;
constexpr double kOracleSeconds = 60.0;
// Criterion 2
constexpr int kGradCircuits = 20;
constexpr double kGradFdTol = 1e-6;
constexpr double kGradPsrTol = 1e-9;
// Criterion 3
constexpr double kGroupInvarianceTol = 1e-12;
// Criteria 4 and 5
constexpr std::size_t kLihPoolLimit = 4;
constexpr std::size_t kTrendSamples = 10;
constexpr double kTrendNoise = 0.10;
constexpr double kTrendRatio = 0.1;
constexpr std::size_t kGroupTrendBondDim = 8;
constexpr std::size_t kGroupTrendSamples = 30;
// Criterion 6
constexpr double kBenchTimeChange = 0.25;
// Criterion 7
constexpr double kChemicalAccuracy = 1.6e-3;
constexpr std::size_t kMaxBfgsEpochs = 50;
constexpr double kH2Seconds = 120.0;
constexpr int kOrderingSeeds = 10;
constexpr int kOrderingRequired = 8;
constexpr double kOrderingInitScale = 1.0;
constexpr double kGdLearningRate = 0.5;
// Criterion 8
constexpr int kInvariantGates = 1000;
constexpr double kCanonicalTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr double kFockTol = 1e-10;
constexpr double kParticleTol = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dmps_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

Mps zeros(std::size_t n, TruncationSettings s) {
  const std::vector<int> bits(n, 0);
  return Mps::product_state(bits, s);
}

TruncationSettings exact(std::size_t n) { return {std::size_t{1} << (n / 2), 0.0}; }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Each step may rise by at most `noise` relative to the running minimum.
bool non_increasing(const std::vector<double>& r, double noise) {
  double lowest = r.front();
  for (double v : r) {
    if (v > lowest * (1 + noise)) return false;
    lowest = std::min(lowest, v);
  }
  return true;
}

bool non_decreasing(const std::vector<double>& r, double noise) {
  double highest = r.front();
  for (double v : r) {
    if (v < highest * (1 - noise)) return false;
    highest = std::max(highest, v);
  }
  return true;
}

std::string list(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : ",") + fmt("%.3g", x);
  return out;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  Rng rng(1001);
  double worst = 1.0;
  for (int k = 0; k < kOracleCircuits; ++k) {
    RandomCircuitOptions o;
    o.n_qubits = 4 + rng() % 7;
    o.n_gates = 1 + rng() % kOracleMaxGates;
    o.n_parametric = rng() % (o.n_gates + 1);
    o.long_range = true;
    const auto c = random_circuit(o, rng);
    const auto params = random_angles(c.n_slots, rng);
    auto m = zeros(o.n_qubits, exact(o.n_qubits));
    apply_circuit(m, route_to_nearest_neighbor(c), params);
    const auto sv = sv_apply_circuit(StateVector::zero(o.n_qubits), c, params);
    worst = std::min(worst, fidelity(to_statevector(m), sv.amplitudes));
  }
  const double t = seconds_since(start);
  return {worst >= 1 - kOracleFidelity && t < kOracleSeconds,
          "min fidelity " + fmt("%.15f", worst) + ", " + fmt("%.1f", t) + " s"};
}

Outcome gradient_exactness() {
  Rng rng(1002);
  WorkerPool pool(1);
  double mean_fd = 0.0, worst_psr = 0.0;
  for (int k = 0; k < kGradCircuits; ++k) {
    RandomCircuitOptions o;
    o.n_qubits = 2 + rng() % 7;
    o.n_gates = 40;
    o.n_parametric = 1 + rng() % 30;
    const auto c = route_to_nearest_neighbor(random_circuit(o, rng));
    const auto params = random_angles(c.n_slots, rng);
    const auto h = random_hamiltonian(o.n_qubits, 8, 3, rng);
    const auto initial = zeros(o.n_qubits, exact(o.n_qubits));
    const auto bp = grad_total(c, params, h, 4, initial, pool).grads;
    mean_fd += mean_relative_error(bp, grad_finite_difference(c, params, h, initial)) / kGradCircuits;
    worst_psr = std::max(worst_psr, max_abs_diff(bp, grad_psr(c, params, h, initial)));
  }
  return {mean_fd <= kGradFdTol && worst_psr <= kGradPsrTol,
          "mean rel err vs FD " + fmt("%.2e", mean_fd) + ", max |BP-PSR| " + fmt("%.2e", worst_psr)};
}

Outcome group_invariance() {
  Rng rng(1003);
  const std::size_t n = 10;
  RandomCircuitOptions o;
  o.n_qubits = n;
  o.n_gates = 60;
  o.n_parametric = 20;
  const auto c = route_to_nearest_neighbor(random_circuit(o, rng));
  const auto params = random_angles(c.n_slots, rng);
  const auto h = random_hamiltonian(n, 24, 4, rng);
  const auto initial = zeros(n, exact(n));
  WorkerPool pool(1);
  const auto base = grad_total(c, params, h, 1, initial, pool).grads;
  double worst = 0.0;
  for (std::size_t m : {std::size_t{4}, h.terms.size()}) {
    worst = std::max(worst, max_abs_diff(base, grad_total(c, params, h, m, initial, pool).grads));
  }
  return {worst <= kGroupInvarianceTol, "max elementwise difference " + fmt("%.2e", worst)};
}

RunConfig lih_config(const std::string& out) {
  RunConfig cfg;
  cfg.fcidump = kData + "/lih_sto3g.fcidump";
  cfg.pool_limit = kLihPoolLimit;
  cfg.out = out;
  return cfg;
}

Outcome truncation_trend() {
  auto cfg = lih_config(scratch("c4"));
  cfg.group_size = 16;
  GradCheckOptions opts;
  opts.bond_dims = {4, 8, 16, 32, 64};
  opts.samples = kTrendSamples;
  const auto rep = cmd_grad_check(cfg, opts);
  std::vector<double> r;
  for (const auto& row : rep.rows) r.push_back(row.r_mean);
  const double ratio = r.back() / r.front();
  return {non_increasing(r, kTrendNoise) && ratio <= kTrendRatio,
          "R(D=4..64) " + list(r) + ", R(64)/R(4) " + fmt("%.2e", ratio)};
}

Outcome group_size_trend() {
  auto cfg = lih_config(scratch("c5"));
  cfg.truncation.d_max = kGroupTrendBondDim;
  GradCheckOptions opts;
  opts.group_sizes = {1, 2, 4, 8, 16};
  opts.samples = kGroupTrendSamples;
  const auto rep = cmd_grad_check(cfg, opts);
  std::vector<double> r;
  for (const auto& row : rep.rows) r.push_back(row.r_mean);
  return {non_decreasing(r, kTrendNoise),
          "D=" + std::to_string(kGroupTrendBondDim) + ", R(size=1..16) " + list(r)};
}

Outcome parameter_count_independence() {
  RunConfig cfg;
  cfg.out = scratch("c6");
  BenchOptions opts;
  const auto rep = cmd_bench(cfg, opts);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    detail += (i ? "; " : "") + std::string("M=") + std::to_string(row.n_params) + " t_bp " + fmt("%.3f", row.t_bp) +
              " s speedup " + fmt("%.1f", row.speedup);
    if (i == 0) continue;
    const auto& prev = rep.rows[i - 1];
    const double change = std::abs(row.t_bp / prev.t_bp - 1);
    const double psr_growth = row.t_psr / prev.t_psr;
    const double m_growth = static_cast<double>(row.n_params) / static_cast<double>(prev.n_params);
    ok = ok && change < kBenchTimeChange && row.speedup > prev.speedup &&
         std::abs(psr_growth / m_growth - 1) < kBenchTimeChange;
  }
  return {ok, detail};
}

// First epoch whose energy is within chemical accuracy.
std::optional<std::size_t> epochs_to_accuracy(const VqeResult& r) {
  for (const auto& e : r.trajectory.epochs) {
    if (std::abs(e.energy - *r.fci_energy) <= kChemicalAccuracy) return e.epoch;
  }
  return std::nullopt;
}

Outcome h2_end_to_end() {
  const auto start = Clock::now();
  const auto dir = scratch("c7");
  cmd_ham_build(kData + "/h2_sto3g.fcidump", dir);
  RunConfig cfg;
  cfg.pauli = dir + "/hamiltonian.txt";
  cfg.electrons = 2;
  cfg.out = dir;
  const auto res = cmd_vqe_run(cfg);
  const double fci = exact_ground_energy(parse_pauli_text(read_text_file(dir + "/hamiltonian.txt")), 2);
  const double error = std::abs(res.energy - fci);
  const auto reached = epochs_to_accuracy(res);
  const double t = seconds_since(start);
  const bool single = error <= kChemicalAccuracy && reached && *reached <= kMaxBfgsEpochs && t < kH2Seconds;

  int ordered = 0;
  for (int seed = 0; seed < kOrderingSeeds; ++seed) {
    auto run = [&](Method m) {
      RunConfig c;
      c.fcidump = kData + "/h2_sto3g.fcidump";
      c.out = scratch("c7_seed");
      c.seed = c.optimizer.seed = static_cast<std::uint64_t>(seed);
      c.init_scale = kOrderingInitScale;
      c.optimizer.method = m;
      c.optimizer.learning_rate = kGdLearningRate;
      c.optimizer.max_iter = 500;
      c.optimizer.f_tol = 1e-10;
      c.optimizer.g_tol = 1e-8;
      const auto e = epochs_to_accuracy(cmd_vqe_run(c));
      return e ? static_cast<double>(*e) : INFINITY;
    };
    const double bfgs = run(Method::Bfgs), gd = run(Method::GradientDescent), free = run(Method::NelderMead);
    if (bfgs <= gd && gd <= free && std::isfinite(free)) ++ordered;
  }
  return {single && ordered >= kOrderingRequired,
          "|E-E_FCI| " + fmt("%.2e", error) + " at epoch " + (reached ? std::to_string(*reached) : "never") + ", " +
              fmt("%.2f", t) + " s; ordering held on " + std::to_string(ordered) + "/" +
              std::to_string(kOrderingSeeds) + " seeds"};
}

Outcome invariant_suites() {
  Rng rng(1008);
  std::string detail;
  bool ok = true;

  auto m = zeros(10, {4, 1e-6});
  double canon = 0.0, norm = 0.0;
  for (int g = 0; g < kInvariantGates; ++g) {
    m.apply_2q_nn(random_unitary(4, rng), rng() % 9);
    canon = std::max(canon, m.right_canonical_error());
    norm = std::max(norm, std::abs(std::abs(inner(m, m)) - 1.0));
  }
  ok = ok && canon <= kCanonicalTol && norm <= kNormTol;
  detail += "canonical " + fmt("%.1e", canon) + ", norm " + fmt("%.1e", norm);

  std::uniform_real_distribution<double> u(-1, 1);
  double fock = 0.0;
  for (std::size_t modes = 1; modes <= 6; ++modes) {
    FermionOperator op;
    op.n_modes = modes;
    op.constant = u(rng);
    for (int t = 0; t < 12; ++t) {
      FermionTerm term;
      term.coefficient = Complex(u(rng), u(rng));
      const auto len = 1 + rng() % 4;
      for (std::size_t k = 0; k < len; ++k) term.ops.push_back({rng() % modes, rng() % 2 == 0});
      FermionTerm adj{std::conj(term.coefficient), {}};
      for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) adj.ops.push_back({it->mode, !it->creation});
      op.terms.push_back(term);
      op.terms.push_back(adj);
    }
    fock = std::max(fock, (hamiltonian_matrix(jordan_wigner(op, 0.0)) - fock_matrix(op)).cwiseAbs().maxCoeff());
  }
  ok = ok && fock <= kFockTol;
  detail += ", JW vs Fock " + fmt("%.1e", fock);

  const std::size_t n = 8, electrons = 4;
  const auto c = route_to_nearest_neighbor(trotterized_circuit(uccsd_pool(electrons, n), n));
  double leak = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto params = random_angles(c.n_slots, rng);
    auto state = Mps::product_state(hf_reference(electrons, n), {16, 0.0});
    apply_circuit(state, c, params);
    const auto amps = to_statevector(state);
    double outside = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      if (static_cast<std::size_t>(__builtin_popcountll(static_cast<unsigned long long>(i))) != electrons) {
        outside += std::norm(amps[i]);
      }
    }
    leak = std::max(leak, outside);
  }
  ok = ok && leak <= kParticleTol;
  detail += ", particle leak " + fmt("%.1e", leak);

  RunConfig one;
  one.fcidump = kData + "/h2_sto3g.fcidump";
  one.init_scale = 1.0;
  one.group_size = 2;
  one.out = scratch("c8_w1");
  auto many = one;
  many.out = scratch("c8_w4");
  many.workers = 4;
  const auto a = cmd_vqe_run(one);
  const auto b = cmd_vqe_run(many);
  bool same = a.record == b.record && a.csv == b.csv;

  RandomCircuitOptions o;
  o.n_qubits = 10;
  o.n_gates = 200;
  o.n_parametric = 40;
  const auto rc = route_to_nearest_neighbor(random_circuit(o, rng));
  const auto params = random_angles(rc.n_slots, rng);
  const auto h = random_hamiltonian(10, 40, 4, rng);
  const auto initial = zeros(10, {8, 1e-6});
  WorkerPool p1(1), p4(4);
  const auto g1 = grad_total(rc, params, h, 3, initial, p1);
  const auto g4 = grad_total(rc, params, h, 3, initial, p4);
  same = same && g1.to_json(false) == g4.to_json(false);
  ok = ok && same;
  detail += same ? ", workers 1 vs 4 byte-identical" : ", workers 1 vs 4 differ";
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"gradient exactness", gradient_exactness},
      {"group invariance", group_invariance},
      {"truncation trend", truncation_trend},
      {"group-size trend", group_size_trend},
      {"parameter-count independence", parameter_count_independence},
      {"H2 end to end", h2_end_to_end},
      {"invariant suites", invariant_suites},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<std::size_t>(only) != i + 1) continue;
    const auto& [name, run] = criteria[i];
    const auto start = Clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("%s %zu %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1, name.c_str(), out.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
