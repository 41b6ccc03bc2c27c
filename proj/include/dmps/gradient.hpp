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
#include <span>
#include <string>
#include <vector>

#include "dmps/circuit.hpp"
#include "dmps/mps.hpp"
#include "dmps/pauli.hpp"
#include "dmps/worker_pool.hpp"

namespace dmps {

enum class Granularity { PerSlot, PerGate };

/// Sums per-gate values (one per parametric gate, in circuit order) into
/// per-slot values.
std::vector<double> gates_to_slots(const ParametricCircuit& c, std::span<const double> per_gate);

/// <psi(params)|H|psi(params)> with |psi> the circuit applied to `initial`.
double energy(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
              const Mps& initial);

struct TruncationSummary {
  double forward_total = 0.0;
  double forward_max = 0.0;
  double backward_total = 0.0;
  double backward_max = 0.0;
  double phi_discarded = 0.0;  // compression of H|psi>
};

struct GroupGradient {
  std::vector<double> per_gate;
  std::vector<Complex> term_values;  // <psi|P|psi> per group term, coefficient included
  double phi_discarded = 0.0;        // compression of H_group |psi>
  double phi_backward_total = 0.0;   // truncation while undoing gates on |phi>
  double phi_backward_max = 0.0;
};

struct BatchGradient {
  std::vector<GroupGradient> groups;
  TruncationSummary shared;  // forward pass and the walk back of |Psi>
};

/// Reverse-mode gradients of <psi|H_j|psi> for several groups H_j at once.
///
/// The circuit is run forward once. For every group, |phi_j> = H_j |psi> is
/// compressed to the state's bond limit; then each gate is undone on |Psi>,
/// walked back from the final state, and on every |phi_j>, and at each
/// parametric gate Re <phi_j| dU |Psi> is accumulated. The factor 2 is
/// applied at the end. Values are per parametric gate, in circuit order. The
/// result for a group does not depend on which other groups share the batch.
BatchGradient grad_backprop_batch(const ParametricCircuit& c, std::span<const double> params,
                                  std::span<const QubitHamiltonian> groups, const Mps& initial);

/// grad_backprop_batch for a single group.
GroupGradient grad_backprop_group(const ParametricCircuit& c, std::span<const double> params,
                                  const QubitHamiltonian& group, const Mps& initial);

struct GradientReport {
  std::vector<double> grads;
  Granularity granularity = Granularity::PerSlot;
  double energy = 0.0;
  TruncationSummary truncation;
  std::size_t group_count = 0;
  double wall_time = 0.0;

  std::string to_json(bool include_timing = true) const;
};

/// Splits `h` into groups of `group_size` strings and deals them, as
/// contiguous batches, to the workers of `pool` (one batch per worker). Each
/// batch runs its own forward pass. Results are summed in group order, so the
/// output does not depend on the number of workers. A failing group is named
/// in the error.
GradientReport grad_total(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
                          std::size_t group_size, const Mps& initial, WorkerPool& pool,
                          Granularity granularity = Granularity::PerSlot);

/// Parameter-shift gradient: for each parametric gate, (E(+pi/2) - E(-pi/2))/2
/// with only that gate's angle shifted, times the gate's slot scale.
std::vector<double> grad_psr(const ParametricCircuit& c, std::span<const double> params, const QubitHamiltonian& h,
                             const Mps& initial, Granularity granularity = Granularity::PerSlot);

/// Central differences per slot.
std::vector<double> grad_finite_difference(const ParametricCircuit& c, std::span<const double> params,
                                           const QubitHamiltonian& h, const Mps& initial, double step = 1e-5);

/// ||a - b|| / ||b||.
double mean_relative_error(std::span<const double> a, std::span<const double> b);

}  // namespace dmps
