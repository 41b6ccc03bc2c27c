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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dmps/types.hpp"

namespace dmps {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// 2x2 matrix of a single-qubit Pauli operator.
ComplexMatrix pauli_matrix(Pauli p);

/// Weighted tensor product of single-qubit Paulis. Qubits absent from `ops`
/// carry the identity.
struct PauliString {
  Complex coefficient{1.0, 0.0};
  std::map<std::size_t, Pauli> ops;

  PauliString() = default;
  PauliString(Complex c, std::map<std::size_t, Pauli> o) : coefficient(c), ops(std::move(o)) {}

  /// Builds a string from a label such as "X0 Z1 Y3".
  static PauliString from_label(std::string_view label, Complex c = 1.0);

  Pauli at(std::size_t qubit) const;
  bool is_identity() const { return ops.empty(); }
  /// One past the largest qubit acted on (0 for the identity).
  std::size_t span() const { return ops.empty() ? 0 : ops.rbegin()->first + 1; }
  /// "X0 Z1" form, "I" for the identity; coefficient not included.
  std::string label() const;
};

/// Operator product, tracking the phase picked up qubit by qubit.
PauliString operator*(const PauliString& a, const PauliString& b);

/// Orders strings by their operator content only.
struct PauliOpsLess {
  bool operator()(const PauliString& a, const PauliString& b) const { return a.ops < b.ops; }
};

/// Merges equal operator strings, drops |c| < prune and sorts by operator
/// content. An identity string, if present, is kept (first in order).
std::vector<PauliString> combine_like_terms(const std::vector<PauliString>& terms,
                                            double prune = 1e-12);

/// Sum of non-identity Pauli strings plus a real constant.
struct QubitHamiltonian {
  std::size_t n_qubits = 0;
  std::vector<PauliString> terms;
  double constant = 0.0;

  std::size_t size() const { return terms.size(); }
};

/// Simplifies a raw term list into a Hamiltonian: like strings merged,
/// coefficients below `prune` dropped, identity moved into `constant`, and
/// terms sorted by operator content.
QubitHamiltonian make_hamiltonian(std::size_t n_qubits, const std::vector<PauliString>& terms,
                                  double constant = 0.0, double prune = 1e-12);

/// Largest |Im c| over all terms.
double max_imaginary_coefficient(const QubitHamiltonian& h);

/// Partitions the term list in order into groups of `group_size` strings
/// (the last one may be shorter). The constant travels with group 0.
std::vector<QubitHamiltonian> split_groups(const QubitHamiltonian& h, std::size_t group_size);

/// Text format: one term per line, `<re> <im> <P><q> <P><q> ...`, with a bare
/// `I` standing for the constant. `#` starts a comment; a `# n_qubits=N`
/// comment fixes the register width, otherwise it is inferred.
QubitHamiltonian parse_pauli_text(std::string_view text);
std::string serialize_pauli_text(const QubitHamiltonian& h);

}  // namespace dmps
