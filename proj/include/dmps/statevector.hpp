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
#include <optional>
#include <span>

#include "dmps/circuit.hpp"
#include "dmps/fermion.hpp"
#include "dmps/pauli.hpp"

namespace dmps {

/// Dense 2^N amplitude vector, qubit 0 most significant.
struct StateVector {
  std::size_t n_qubits = 0;
  ComplexVector amplitudes;

  static StateVector basis(std::span<const int> bits);
  static StateVector zero(std::size_t n_qubits);
};

/// Applies a gate on any qubit pair; no routing needed.
void sv_apply_gate(StateVector& sv, const Gate& g, std::span<const double> params);
StateVector sv_apply_circuit(StateVector sv, const ParametricCircuit& c, std::span<const double> params);

/// p |v>, coefficient included.
ComplexVector sv_apply_pauli(const ComplexVector& v, std::size_t n_qubits, const PauliString& p);

/// H |v>, constant included.
ComplexVector sv_apply_hamiltonian(const ComplexVector& v, const QubitHamiltonian& h);

double sv_expectation(const StateVector& sv, const QubitHamiltonian& h);

/// |<a|b>|^2 for normalized inputs.
double fidelity(const ComplexVector& a, const ComplexVector& b);

/// Dense 2^N x 2^N matrix of a Pauli string or Hamiltonian (N <= 12).
ComplexMatrix pauli_string_matrix(const PauliString& p, std::size_t n_qubits);
ComplexMatrix hamiltonian_matrix(const QubitHamiltonian& h);

/// Dense 2^N x 2^N unitary of a circuit, built column by column.
ComplexMatrix circuit_unitary(const ParametricCircuit& c, std::span<const double> params);

/// Lowest eigenvalue of `h`, optionally restricted to the basis states with
/// `particles` set bits. Small problems are diagonalized densely, larger ones
/// by restarted Lanczos to a residual of 1e-8. Limited to 24 qubits.
double exact_ground_energy(const QubitHamiltonian& h, std::optional<std::size_t> particles = std::nullopt);

/// Matrix of a fermionic operator in the occupation-number basis of
/// `n_modes <= 12` modes; mode p is bit p counted from the most significant
/// end, with the usual sign from the occupied modes before p.
ComplexMatrix fock_matrix(const FermionOperator& op);

inline constexpr std::size_t kMaxDenseMatrixQubits = 12;

}  // namespace dmps
