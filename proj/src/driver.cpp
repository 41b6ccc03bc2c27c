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

#include "dmps/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dmps/ansatz.hpp"
#include "dmps/errors.hpp"
#include "dmps/fcidump.hpp"
#include "dmps/fermion.hpp"
#include "dmps/gradient.hpp"
#include "dmps/random_circuit.hpp"
#include "dmps/statevector.hpp"
#include "dmps/worker_pool.hpp"
#include "json.hpp"

namespace dmps {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxFciQubits = 16;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Json settings_json(const RunConfig& cfg) {
  Json j;
  j["fcidump"] = cfg.fcidump ? Json(*cfg.fcidump) : Json(nullptr);
  j["pauli"] = cfg.pauli ? Json(*cfg.pauli) : Json(nullptr);
  j["ansatz"] = cfg.ansatz;
  j["electrons"] = cfg.electrons ? Json(*cfg.electrons) : Json(nullptr);
  j["pool_limit"] = cfg.pool_limit;
  j["bond_dim"] = cfg.truncation.d_max;
  j["svd_tol"] = cfg.truncation.eps;
  j["group_size"] = cfg.group_size;
  j["optimizer"] = method_name(cfg.optimizer.method);
  j["lr"] = cfg.optimizer.learning_rate;
  j["max_iter"] = cfg.optimizer.max_iter;
  j["f_tol"] = cfg.optimizer.f_tol;
  j["g_tol"] = cfg.optimizer.g_tol;
  j["init_scale"] = cfg.init_scale;
  j["seed"] = cfg.seed;
  return j;
}

std::vector<double> initial_params(const RunConfig& cfg, std::size_t n) {
  std::vector<double> x(n, 0.0);
  if (cfg.init_scale > 0) {
    Rng rng(cfg.seed);
    std::uniform_real_distribution<double> u(-cfg.init_scale, cfg.init_scale);
    for (auto& v : x) v = u(rng);
  }
  return x;
}

std::optional<double> reference_energy(const QubitHamiltonian& h, std::optional<std::size_t> electrons) {
  if (h.n_qubits > kMaxFciQubits) return std::nullopt;
  return exact_ground_energy(h, electrons);
}

}  // namespace

void RunConfig::validate() const {
  if (fcidump.has_value() == pauli.has_value()) {
    throw InvalidInput("exactly one Hamiltonian source is required (--fcidump or --pauli)");
  }
  if (workers < 1) throw InvalidInput("workers must be at least 1");
  if (group_size < 1) throw InvalidInput("group size must be at least 1");
  if (truncation.d_max < 1) throw InvalidInput("bond dimension must be at least 1");
  if (!(truncation.eps >= 0) || !std::isfinite(truncation.eps)) {
    throw InvalidInput("SVD tolerance must be a non-negative number");
  }
  if (!(init_scale >= 0) || !std::isfinite(init_scale)) throw InvalidInput("init scale must be non-negative");
  if (ansatz.empty()) throw InvalidInput("ansatz must be 'uccsd' or a circuit file");
  optimizer.validate();
}

std::string RunConfig::hash() const { return hex64(fnv1a(settings_json(*this).dump())); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory '" + dir + "': " + ec.message());
  const auto path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
  if (!out) throw InvalidInput("write to '" + path + "' failed");
}

Problem load_problem(const RunConfig& cfg) {
  cfg.validate();
  QubitHamiltonian h;
  std::optional<std::size_t> electrons = cfg.electrons;
  if (cfg.fcidump) {
    const auto mi = parse_fcidump(read_text_file(*cfg.fcidump));
    if (electrons && *electrons != mi.n_electrons) {
      throw InvalidInput("--electrons " + std::to_string(*electrons) + " disagrees with NELEC=" +
                         std::to_string(mi.n_electrons) + " in the FCIDUMP");
    }
    electrons = mi.n_electrons;
    h = jordan_wigner(build_fermionic_hamiltonian(mi));
  } else {
    h = parse_pauli_text(read_text_file(*cfg.pauli));
  }
  if (h.n_qubits == 0) throw InvalidInput("Hamiltonian acts on no qubits");
  if (electrons && *electrons > h.n_qubits) throw InvalidInput("more electrons than qubits");

  ParametricCircuit c;
  if (cfg.ansatz == "uccsd") {
    if (!electrons) throw InvalidInput("the UCCSD ansatz needs an electron count (--electrons)");
    c = trotterized_circuit(limit_pool(uccsd_pool(*electrons, h.n_qubits), cfg.pool_limit), h.n_qubits);
  } else {
    c = parse_circuit_text(read_text_file(cfg.ansatz));
    if (c.n_qubits < h.n_qubits) throw InvalidInput("ansatz circuit is narrower than the Hamiltonian");
    h.n_qubits = c.n_qubits;
  }
  c = route_to_nearest_neighbor(c);

  const auto bits = electrons ? hf_reference(*electrons, c.n_qubits) : std::vector<int>(c.n_qubits, 0);
  return {std::move(h), std::move(c), Mps::product_state(bits, cfg.truncation), electrons};
}

std::string cmd_ham_build(const std::string& fcidump_path, const std::string& out_dir) {
  const auto mi = parse_fcidump(read_text_file(fcidump_path));
  const auto h = jordan_wigner(build_fermionic_hamiltonian(mi));
  const auto text = serialize_pauli_text(h);

  Json j;
  j["command"] = "ham build";
  j["n_qubits"] = h.n_qubits;
  j["n_terms"] = h.terms.size();
  j["n_electrons"] = mi.n_electrons;
  j["constant"] = h.constant;
  j["max_imaginary_coefficient"] = max_imaginary_coefficient(h);
  const auto fci = reference_energy(h, mi.n_electrons);
  j["fci_energy"] = fci ? Json(*fci) : Json(nullptr);
  j["hamiltonian_file"] = "hamiltonian.txt";
  const auto summary = j.dump(2) + "\n";

  write_text_file(out_dir, "hamiltonian.txt", text);
  write_text_file(out_dir, "hamiltonian.json", summary);
  return summary;
}

VqeResult cmd_vqe_run(const RunConfig& cfg) {
  const auto start = Clock::now();
  const Problem p = load_problem(cfg);
  const auto x0 = initial_params(cfg, p.circuit.n_slots);
  const auto fci = reference_energy(p.h, p.electrons);

  WorkerPool pool(cfg.workers);
  const Objective objective = [&](std::span<const double> x) {
    const auto r = grad_total(p.circuit, x, p.h, cfg.group_size, p.initial, pool);
    return ValueAndGradient{r.energy, r.grads};
  };

  OptimizeResult opt;
  if (cfg.optimizer.method == Method::NelderMead) {
    opt = gradient_free_baseline(
        [&](std::span<const double> x) { return energy(p.circuit, x, p.h, p.initial); }, x0, cfg.optimizer);
  } else {
    opt = minimize(objective, x0, cfg.optimizer);
  }
  const auto& traj = opt.trajectory;

  VqeResult res;
  res.params = opt.params;
  res.trajectory = traj;
  res.energy = traj.epochs.empty() ? energy(p.circuit, opt.params, p.h, p.initial) : traj.epochs.back().energy;
  res.fci_energy = fci;

  Json j;
  j["command"] = "vqe run";
  j["config_hash"] = cfg.hash();
  j["settings"] = settings_json(cfg);
  j["n_qubits"] = p.h.n_qubits;
  j["n_terms"] = p.h.terms.size();
  j["n_parameters"] = p.circuit.n_slots;
  j["n_parametric_gates"] = p.circuit.n_parametric_gates();
  j["n_gates"] = p.circuit.gates.size();
  j["reference_energy"] = energy(p.initial, p.h);
  j["energy"] = res.energy;
  j["fci_energy"] = fci ? Json(*fci) : Json(nullptr);
  j["error_vs_fci"] = fci ? Json(std::abs(res.energy - *fci)) : Json(nullptr);
  j["status"] = status_name(traj.status);
  j["epochs"] = traj.epochs.empty() ? 0 : traj.epochs.back().epoch;
  j["evaluations"] = traj.evaluations;
  j["params"] = opt.params;
  if (cfg.timings) j["timings"] = {{"wall_time", seconds_since(start)}, {"workers", cfg.workers}};
  res.record = j.dump(2) + "\n";
  res.csv = traj.to_csv(cfg.timings);

  write_text_file(cfg.out, "run.json", res.record);
  write_text_file(cfg.out, "trajectory.csv", res.csv);
  return res;
}

GradCheckReport cmd_grad_check(const RunConfig& cfg, const GradCheckOptions& opts) {
  const Problem p = load_problem(cfg);
  if (opts.samples < 1) throw InvalidInput("grad check needs at least one sample");
  auto dims = opts.bond_dims.empty() ? std::vector<std::size_t>{cfg.truncation.d_max} : opts.bond_dims;
  auto sizes = opts.group_sizes.empty() ? std::vector<std::size_t>{cfg.group_size} : opts.group_sizes;
  for (auto d : dims) {
    if (d < 1) throw InvalidInput("bond dimensions must be at least 1");
  }
  for (auto m : sizes) {
    if (m < 1) throw InvalidInput("group sizes must be at least 1");
  }
  if (p.circuit.n_slots == 0) throw InvalidInput("ansatz has no parameters");

  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<std::vector<double>> samples(opts.samples, std::vector<double>(p.circuit.n_slots));
  for (auto& s : samples) {
    for (auto& v : s) v = u(rng);
  }

  WorkerPool pool(cfg.workers);
  GradCheckReport report;
  Json rows = Json::array();
  for (auto d : dims) {
    Mps initial = p.initial;
    initial.set_settings({d, cfg.truncation.eps});
    std::vector<std::vector<double>> psr(samples.size()), fd(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
      psr[s] = grad_psr(p.circuit, samples[s], p.h, initial, Granularity::PerGate);
      if (opts.finite_difference) fd[s] = grad_finite_difference(p.circuit, samples[s], p.h, initial);
    }
    for (auto m : sizes) {
      GradCheckRow row;
      row.d_max = d;
      row.group_size = m;
      double fd_sum = 0.0;
      Json r_samples = Json::array();
      for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto bp = grad_total(p.circuit, samples[s], p.h, m, initial, pool, Granularity::PerGate);
        row.group_count = bp.group_count;
        const double r = mean_relative_error(bp.grads, psr[s]);
        r_samples.push_back(r);
        row.r_mean += r / static_cast<double>(samples.size());
        row.r_max = std::max(row.r_max, r);
        if (opts.finite_difference) {
          const auto slots = gates_to_slots(p.circuit, bp.grads);
          fd_sum += mean_relative_error(slots, fd[s]);
        }
      }
      if (opts.finite_difference) row.r_fd_mean = fd_sum / static_cast<double>(samples.size());
      Json jr;
      jr["bond_dim"] = row.d_max;
      jr["group_size"] = row.group_size;
      jr["group_count"] = row.group_count;
      jr["r_mean"] = row.r_mean;
      jr["r_max"] = row.r_max;
      jr["r_samples"] = r_samples;
      if (row.r_fd_mean) jr["r_fd_mean"] = *row.r_fd_mean;
      rows.push_back(std::move(jr));
      report.rows.push_back(row);
    }
  }

  Json j;
  j["command"] = "grad check";
  j["config_hash"] = cfg.hash();
  j["settings"] = settings_json(cfg);
  j["n_qubits"] = p.h.n_qubits;
  j["n_terms"] = p.h.terms.size();
  j["n_parametric_gates"] = p.circuit.n_parametric_gates();
  j["samples"] = opts.samples;
  j["rows"] = std::move(rows);
  report.json = j.dump(2) + "\n";
  write_text_file(cfg.out, "grad_check.json", report.json);
  return report;
}

BenchReport cmd_bench(const RunConfig& cfg, const BenchOptions& opts) {
  if (opts.param_counts.empty()) throw InvalidInput("bench needs at least one parameter count");
  if (opts.repeats < 1) throw InvalidInput("bench needs at least one repeat");
  if (cfg.workers < 1) throw InvalidInput("workers must be at least 1");
  if (cfg.group_size < 1) throw InvalidInput("group size must be at least 1");
  const auto max_m = *std::max_element(opts.param_counts.begin(), opts.param_counts.end());
  if (max_m > opts.n_gates) throw InvalidInput("more parameters than gates");
  for (auto m : opts.param_counts) {
    if (m < 1) throw InvalidInput("parameter counts must be at least 1");
  }

  Rng rng(cfg.seed);
  RandomCircuitOptions rc;
  rc.n_qubits = opts.n_qubits;
  rc.n_gates = opts.n_gates;
  rc.n_parametric = max_m;
  rc.long_range = false;
  const auto base = random_circuit(rc, rng);
  const auto base_params = random_angles(base.n_slots, rng);
  const auto h = random_hamiltonian(opts.n_qubits, opts.n_terms, 3, rng);
  const auto initial = Mps::product_state(std::vector<int>(opts.n_qubits, 0), cfg.truncation);

  std::vector<std::size_t> parametric;
  for (std::size_t i = 0; i < base.gates.size(); ++i) {
    if (base.gates[i].is_parametric()) parametric.push_back(i);
  }

  WorkerPool pool(cfg.workers);
  BenchReport report;
  Json rows = Json::array();
  for (auto m : opts.param_counts) {
    // Keep m evenly spread parametric gates; freeze the rest at their angles.
    ParametricCircuit c = base;
    c.n_slots = m;
    std::vector<double> params;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < parametric.size(); ++k) {
      Gate& g = c.gates[parametric[k]];
      const double angle = g.angle(base_params);
      if (kept < m && k * m / parametric.size() == kept) {
        g = gates::rotation(g.kind, g.qubits[0], kept, 1.0);
        params.push_back(angle);
        ++kept;
      } else {
        g = gates::fixed_rotation(g.kind, g.qubits[0], angle);
      }
    }
    c.validate();

    std::vector<double> t_fwd, t_bp;
    for (std::size_t r = 0; r < opts.repeats; ++r) {
      auto t0 = Clock::now();
      Mps psi = initial;
      apply_circuit(psi, c, params);
      t_fwd.push_back(seconds_since(t0));
      t0 = Clock::now();
      const auto g = grad_total(c, params, h, cfg.group_size, initial, pool, Granularity::PerGate);
      t_bp.push_back(seconds_since(t0));
      report.group_count = g.group_count;
    }
    BenchRow row;
    row.n_params = m;
    row.t_forward = median(t_fwd);
    row.t_bp = median(t_bp);
    row.t_psr = row.t_forward * 2.0 * static_cast<double>(m);
    row.speedup = row.t_psr / row.t_bp;
    row.model_speedup = 2.0 * static_cast<double>(m) / static_cast<double>(report.group_count + 1);
    report.rows.push_back(row);
    rows.push_back({{"n_params", m},
                    {"t_forward", row.t_forward},
                    {"t_bp", row.t_bp},
                    {"t_psr", row.t_psr},
                    {"speedup", row.speedup},
                    {"model_speedup", row.model_speedup}});
  }

  Json j;
  j["command"] = "bench";
  j["n_qubits"] = opts.n_qubits;
  j["n_gates"] = opts.n_gates;
  j["n_terms"] = opts.n_terms;
  j["bond_dim"] = cfg.truncation.d_max;
  j["svd_tol"] = cfg.truncation.eps;
  j["group_size"] = cfg.group_size;
  j["group_count"] = report.group_count;
  j["workers"] = cfg.workers;
  j["repeats"] = opts.repeats;
  j["seed"] = cfg.seed;
  j["rows"] = std::move(rows);
  report.json = j.dump(2) + "\n";
  write_text_file(cfg.out, "bench.json", report.json);
  return report;
}

}  // namespace dmps
