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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmps/circuit.hpp"
#include "dmps/mps.hpp"
#include "dmps/optimizer.hpp"
#include "dmps/pauli.hpp"

namespace dmps {

/// Settings shared by every command.
struct RunConfig {
  std::optional<std::string> fcidump;
  std::optional<std::string> pauli;
  /// "uccsd" or the path of a circuit text file.
  std::string ansatz = "uccsd";
  /// Electron count; taken from the FCIDUMP header when that is the source.
  std::optional<std::size_t> electrons;
  /// Keep this many excitations of the UCCSD pool (0 keeps all).
  std::size_t pool_limit = 0;
  TruncationSettings truncation{128, 1e-6};
  std::size_t group_size = 4;
  OptimizerConfig optimizer;
  /// Starting parameters are uniform in [-init_scale, init_scale], drawn from
  /// `seed`; 0 starts from all zeros.
  double init_scale = 0.0;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
  bool timings = false;

  void validate() const;
  /// 16 hex digits of a 64-bit FNV-1a hash over every setting that affects
  /// results. `workers`, `out` and `timings` are left out.
  std::string hash() const;
};

/// Hamiltonian, routed ansatz circuit and reference state of a run.
struct Problem {
  QubitHamiltonian h;
  ParametricCircuit circuit;
  Mps initial;
  std::optional<std::size_t> electrons;
};

/// Reads and checks every input named by `cfg` before any simulation.
Problem load_problem(const RunConfig& cfg);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& dir, const std::string& name, const std::string& content);

/// FCIDUMP to Pauli text. Writes hamiltonian.txt and hamiltonian.json into
/// `out_dir` and returns the JSON summary.
std::string cmd_ham_build(const std::string& fcidump_path, const std::string& out_dir);

struct VqeResult {
  std::vector<double> params;
  Trajectory trajectory;
  double energy = 0.0;
  std::optional<double> fci_energy;
  std::string record;  // run.json
  std::string csv;     // trajectory.csv
};

/// Optimizes the ansatz energy. Gradients come from grad_total with one
/// Hamiltonian group per work item. Writes run.json and trajectory.csv.
VqeResult cmd_vqe_run(const RunConfig& cfg);

struct GradCheckOptions {
  std::vector<std::size_t> bond_dims;    // empty: cfg.truncation.d_max only
  std::vector<std::size_t> group_sizes;  // empty: cfg.group_size only
  std::size_t samples = 10;
  bool finite_difference = false;
};

struct GradCheckRow {
  std::size_t d_max = 0;
  std::size_t group_size = 0;
  std::size_t group_count = 0;
  double r_mean = 0.0;  // ||g_BP - g_PSR|| / ||g_PSR||, averaged over samples
  double r_max = 0.0;
  std::optional<double> r_fd_mean;  // same against central differences
};

struct GradCheckReport {
  std::vector<GradCheckRow> rows;
  std::string json;
};

/// Compares back-propagated gradients with parameter-shift gradients at the
/// same bond dimension, per parametric gate, for random parameters in
/// [-pi, pi]. Writes grad_check.json.
GradCheckReport cmd_grad_check(const RunConfig& cfg, const GradCheckOptions& opts);

struct BenchOptions {
  std::size_t n_qubits = 10;
  std::size_t n_gates = 2000;
  std::vector<std::size_t> param_counts{50, 100, 200};
  std::size_t n_terms = 16;
  std::size_t repeats = 3;
};

struct BenchRow {
  std::size_t n_params = 0;
  double t_forward = 0.0;  // median seconds
  double t_bp = 0.0;       // median seconds
  double t_psr = 0.0;      // t_forward * 2M
  double speedup = 0.0;
  double model_speedup = 0.0;  // 2M / (m + 1), m = group count
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t group_count = 0;
  std::string json;
};

/// Times grad_total against the parameter-shift estimate on one random
/// circuit whose gate list is fixed while the number of parametric gates
/// varies. Writes bench.json.
BenchReport cmd_bench(const RunConfig& cfg, const BenchOptions& opts);

}  // namespace dmps
