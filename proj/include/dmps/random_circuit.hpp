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
#include <random>

#include "dmps/circuit.hpp"
#include "dmps/pauli.hpp"

namespace dmps {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a complex Gaussian matrix, phases fixed).
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

struct RandomCircuitOptions {
  std::size_t n_qubits = 4;
  std::size_t n_gates = 20;
  /// Parametric rotations among the gates, each on its own slot.
  std::size_t n_parametric = 0;
  double two_qubit_fraction = 0.4;
  /// Allow two-qubit gates between any pair, not only neighbours.
  bool long_range = true;
  /// Include Haar-random generic gates in the non-parametric mix.
  bool generic = true;
};

ParametricCircuit random_circuit(const RandomCircuitOptions& opts, Rng& rng);

/// Random real-coefficient Hamiltonian of `n_terms` distinct strings, each
/// acting on up to `max_weight` random qubits.
QubitHamiltonian random_hamiltonian(std::size_t n_qubits, std::size_t n_terms, std::size_t max_weight, Rng& rng);

std::vector<double> random_angles(std::size_t n, Rng& rng);

}  // namespace dmps
