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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dmps {

enum class Method { GradientDescent, Adam, Bfgs, NelderMead };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct OptimizerConfig {
  Method method = Method::Bfgs;
  double learning_rate = 0.01;
  std::size_t max_iter = 100;
  double f_tol = 1e-6;
  double g_tol = 1e-5;
  std::uint64_t seed = 0;
  /// Initial simplex edge for Nelder-Mead.
  double simplex_step = 0.5;
  bool record_params = false;

  void validate() const;
};

enum class Status { ConvergedF, ConvergedG, MaxIter, NonFinite };

std::string status_name(Status s);

struct EpochRecord {
  std::size_t epoch = 0;
  double energy = 0.0;
  double grad_norm = 0.0;  // 0 for Nelder-Mead
  double seconds = 0.0;
  std::vector<double> params;  // only with record_params
};

/// Epoch 0 is the starting point; one epoch is one iteration of the method.
struct Trajectory {
  std::vector<EpochRecord> epochs;
  Status status = Status::MaxIter;
  std::size_t evaluations = 0;

  /// `epoch,energy,grad_norm,seconds` with %.17g reals; timings are written
  /// as 0 unless `with_timings`.
  std::string to_csv(bool with_timings = false) const;
  std::string to_json(bool with_timings = false) const;
};

struct ValueAndGradient {
  double value;
  std::vector<double> gradient;
};

using Objective = std::function<ValueAndGradient(std::span<const double>)>;
using ValueOnly = std::function<double(std::span<const double>)>;

struct OptimizeResult {
  std::vector<double> params;
  Trajectory trajectory;
};

/// Gradient descent, Adam or BFGS (backtracking Armijo line search, c = 1e-4,
/// step halving). Stops when |E_t - E_{t-1}| < f_tol, ||g|| < g_tol or after
/// max_iter epochs; a non-finite value or gradient ends the run with status
/// NonFinite and the trajectory so far.
OptimizeResult minimize(const Objective& f, std::span<const double> x0, const OptimizerConfig& cfg);

/// Nelder-Mead simplex search, stopping when the spread of simplex values
/// falls below f_tol or after max_iter epochs.
OptimizeResult gradient_free_baseline(const ValueOnly& f, std::span<const double> x0, const OptimizerConfig& cfg);

}  // namespace dmps
