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
#include <vector>

#include "dmps/circuit.hpp"
#include "dmps/pauli.hpp"

namespace dmps {

/// Occupation bits of the Hartree-Fock determinant: the lowest
/// `n_electrons` spin-orbitals filled.
std::vector<int> hf_reference(std::size_t n_electrons, std::size_t n_qubits);

struct Excitation {
  enum class Kind { Single, Double };
  Kind kind = Kind::Single;
  /// (i, a) or (i, j, a, b); occupied indices first, both halves ascending.
  std::vector<std::size_t> indices;
  std::size_t slot = 0;
};

/// Spin-preserving singles then doubles, each in lexicographic index order.
std::vector<Excitation> uccsd_pool(std::size_t n_electrons, std::size_t n_qubits);

/// Keeps `limit` excitations spread evenly over the pool and renumbers their
/// slots; `limit == 0` or `limit >= pool.size()` returns the pool unchanged.
std::vector<Excitation> limit_pool(const std::vector<Excitation>& pool, std::size_t limit);

/// Jordan-Wigner image of T - T^dagger with T = a+_a a_i or a+_a a+_b a_j a_i.
/// Every coefficient is purely imaginary; strings are sorted by content.
std::vector<PauliString> cluster_to_pauli(const Excitation& e, std::size_t n_qubits);

/// Appends exp(i * angle * P) for angle = scale * params[slot] / -2, i.e.
/// basis change, CNOT ladder, RZ(slot, scale), and the mirrored ladder.
void append_pauli_rotation(ParametricCircuit& c, const PauliString& p, std::size_t slot, double scale);

/// Product over `trotter_steps` repetitions and over the pool of
/// exp(theta_e / k * (T_e - T_e^dagger)), one slot per excitation. Two-qubit
/// gates may be long-range; route before applying to an MPS.
ParametricCircuit trotterized_circuit(const std::vector<Excitation>& pool, std::size_t n_qubits,
                                      std::size_t trotter_steps = 1);

}  // namespace dmps
