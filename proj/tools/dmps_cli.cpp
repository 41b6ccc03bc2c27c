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

// dmps command-line driver.
//
//   dmps ham build --fcidump h2.fcidump --out run/
//   dmps vqe run   --fcidump h2.fcidump --optimizer bfgs --out run/
//   dmps grad check --fcidump lih.fcidump --bond-dims 4,8,16 --out run/
//   dmps bench     --bond-dim 16 --params 50,100,200 --out run/
//
// Every option can also be set through the environment variable named in
// its help text (DMPS_ followed by the upper-cased flag name).

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dmps/driver.hpp"
#include "dmps/errors.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOther = 1;

std::string env_name(const std::string& flag) {
  std::string out = "DMPS_";
  for (char c : flag.substr(2)) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <typename T>
CLI::Option* option(CLI::App* app, const std::string& flag, T& target, const std::string& help) {
  return app->add_option(flag, target, help)->envname(env_name(flag));
}

CLI::Option* flag(CLI::App* app, const std::string& name, bool& target, const std::string& help) {
  return app->add_flag(name, target, help)->envname(env_name(name));
}

int report_error(const std::string& kind, const std::string& message, int code, std::size_t line = 0,
                 std::size_t column = 0) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (line > 0) j["error"]["line"] = line;
  if (column > 0) j["error"]["column"] = column;
  j["error"]["exit_code"] = code;
  std::cerr << j.dump(2) << '\n';
  return code;
}

struct Flags {
  std::string fcidump, pauli, optimizer = "bfgs";
  std::size_t electrons = 0;
};

void add_run_options(CLI::App* app, dmps::RunConfig& cfg, Flags& f, bool with_source) {
  if (with_source) {
    option(app, "--fcidump", f.fcidump, "FCIDUMP integral file");
    option(app, "--pauli", f.pauli, "Pauli text Hamiltonian");
    option(app, "--ansatz", cfg.ansatz, "'uccsd' or a circuit text file")->capture_default_str();
    option(app, "--electrons", f.electrons, "electron count (needed with --pauli and uccsd)");
    option(app, "--pool-limit", cfg.pool_limit, "keep this many UCCSD excitations (0 = all)")
        ->capture_default_str();
  }
  option(app, "--bond-dim", cfg.truncation.d_max, "maximum bond dimension D")->capture_default_str();
  option(app, "--svd-tol", cfg.truncation.eps, "relative singular value cutoff")->capture_default_str();
  option(app, "--group-size", cfg.group_size, "Pauli strings per Hamiltonian group")->capture_default_str();
  option(app, "--workers", cfg.workers, "worker threads")->capture_default_str();
  option(app, "--seed", cfg.seed, "random seed")->capture_default_str();
  option(app, "--out", cfg.out, "output directory")->capture_default_str();
  flag(app, "--timings", cfg.timings, "include wall-clock timings in outputs");
}

void add_optimizer_options(CLI::App* app, dmps::RunConfig& cfg, Flags& f) {
  option(app, "--optimizer", f.optimizer, "gd, adam, bfgs or nelder-mead")->capture_default_str();
  option(app, "--lr", cfg.optimizer.learning_rate, "learning rate (gd, adam)")->capture_default_str();
  option(app, "--max-iter", cfg.optimizer.max_iter, "maximum epochs")->capture_default_str();
  option(app, "--f-tol", cfg.optimizer.f_tol, "stop when the energy changes less than this")->capture_default_str();
  option(app, "--g-tol", cfg.optimizer.g_tol, "stop when the gradient norm is below this")->capture_default_str();
  option(app, "--init-scale", cfg.init_scale, "random start in [-s, s] (0 starts at zero)")->capture_default_str();
}

void finish_config(dmps::RunConfig& cfg, const Flags& f) {
  if (!f.fcidump.empty()) cfg.fcidump = f.fcidump;
  if (!f.pauli.empty()) cfg.pauli = f.pauli;
  if (f.electrons > 0) cfg.electrons = f.electrons;
  cfg.optimizer.method = dmps::parse_method(f.optimizer);
  cfg.optimizer.seed = cfg.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPS circuit simulator with back-propagated gradients"};
  app.require_subcommand(1);

  dmps::RunConfig cfg;
  Flags f;

  auto* ham = app.add_subcommand("ham", "Hamiltonian tools")->require_subcommand(1);
  auto* ham_build = ham->add_subcommand("build", "FCIDUMP to Pauli text");
  std::string ham_fcidump, ham_out = ".";
  option(ham_build, "--fcidump", ham_fcidump, "FCIDUMP integral file")->required();
  option(ham_build, "--out", ham_out, "output directory")->capture_default_str();

  auto* vqe = app.add_subcommand("vqe", "variational eigensolver")->require_subcommand(1);
  auto* vqe_run = vqe->add_subcommand("run", "optimize the ansatz energy");
  add_run_options(vqe_run, cfg, f, true);
  add_optimizer_options(vqe_run, cfg, f);

  auto* grad = app.add_subcommand("grad", "gradient tools")->require_subcommand(1);
  auto* grad_check = grad->add_subcommand("check", "back propagation against parameter shift");
  add_run_options(grad_check, cfg, f, true);
  dmps::GradCheckOptions gc;
  option(grad_check, "--bond-dims", gc.bond_dims, "bond dimensions to sweep")->delimiter(',');
  option(grad_check, "--group-sizes", gc.group_sizes, "group sizes to sweep")->delimiter(',');
  option(grad_check, "--samples", gc.samples, "random parameter draws per point")->capture_default_str();
  flag(grad_check, "--fd", gc.finite_difference, "also compare with central differences");

  auto* bench = app.add_subcommand("bench", "time back propagation against parameter shift");
  add_run_options(bench, cfg, f, false);
  dmps::BenchOptions bo;
  option(bench, "--qubits", bo.n_qubits, "register width")->capture_default_str();
  option(bench, "--gates", bo.n_gates, "total gate count")->capture_default_str();
  option(bench, "--params", bo.param_counts, "parametric gate counts")->delimiter(',');
  option(bench, "--terms", bo.n_terms, "random Hamiltonian terms")->capture_default_str();
  option(bench, "--repeats", bo.repeats, "timed repetitions (median reported)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kExitInput);
  }

  try {
    if (*ham_build) {
      std::cout << dmps::cmd_ham_build(ham_fcidump, ham_out);
    } else if (*vqe_run) {
      finish_config(cfg, f);
      std::cout << dmps::cmd_vqe_run(cfg).record;
    } else if (*grad_check) {
      finish_config(cfg, f);
      std::cout << dmps::cmd_grad_check(cfg, gc).json;
    } else if (*bench) {
      finish_config(cfg, f);
      std::cout << dmps::cmd_bench(cfg, bo).json;
    }
  } catch (const dmps::ParseError& e) {
    return report_error("parse_error", e.what(), kExitInput, e.line(), e.column());
  } catch (const dmps::InvalidInput& e) {
    return report_error("input_error", e.what(), kExitInput);
  } catch (const dmps::NumericalError& e) {
    return report_error("numerical_error", e.what(), kExitNumerical);
  } catch (const std::exception& e) {
    return report_error("internal_error", e.what(), kExitOther);
  }
  return kExitOk;
}
