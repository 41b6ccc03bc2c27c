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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dmps/pauli.hpp"
#include "dmps/types.hpp"

namespace dmps {

/// Right-canonical matrix product state over qubits.
///
/// Site n holds the rank-3 tensor B[n] with index order (left bond,
/// physical, right bond), stored as the two matrices B[n][i] for i = 0, 1.
/// Bond n sits between sites n-1 and n; bonds 0 and N are trivial. The
/// Schmidt vector of every bond is kept next to the tensors, normalized to
/// unit 2-norm.
class Mps {
 public:
  using SiteTensor = std::array<ComplexMatrix, 2>;

  /// Computational basis state |bits>, bond dimension 1 everywhere.
  static Mps product_state(std::span<const int> bits, TruncationSettings settings = {});

  /// Assembles a state from raw parts. Shapes are checked; canonical form
  /// is the caller's responsibility.
  static Mps from_parts(std::vector<SiteTensor> sites, std::vector<RealVector> schmidt,
                        TruncationSettings settings);

  std::size_t size() const { return sites_.size(); }
  const SiteTensor& site(std::size_t n) const { return sites_.at(n); }
  const RealVector& schmidt(std::size_t bond) const { return schmidt_.at(bond); }
  std::size_t bond_dimension(std::size_t bond) const;
  std::size_t max_bond_dimension() const;

  const TruncationSettings& settings() const { return settings_; }
  void set_settings(TruncationSettings s) { settings_ = s; }

  /// When enabled, gate matrices are checked for unitarity before use.
  void set_gate_validation(bool on) { validate_gates_ = on; }

  /// Contracts a single-qubit gate into site `site`. Bond dimensions and the
  /// canonical form are untouched.
  void apply_1q(const ComplexMatrix& gate, std::size_t site);

  /// Applies a two-qubit gate to sites (left_site, left_site + 1); the
  /// 4x4 matrix acts on |i_left i_right> with the left qubit most
  /// significant. Returns the discarded weight of the truncation.
  ///
  /// The pair is contracted with the gate, weighted by the Schmidt vector of
  /// the bond left of the pair and split by a truncated SVD. The right site
  /// becomes V and the left site becomes C V^dagger, so no Schmidt value is
  /// ever divided by. If the left site then misses the right-canonical
  /// condition (truncation or vanishing Schmidt values), sites 0..left_site
  /// are re-canonicalized by a QR sweep and an SVD sweep back, which also
  /// refreshes their Schmidt vectors. The state is renormalized afterwards.
  double apply_2q_nn(const ComplexMatrix& gate, std::size_t left_site);

  /// Norm of the truncated state before the renormalization performed by the
  /// most recent apply_2q_nn (1 when nothing was cut).
  double last_renormalization() const { return last_renormalization_; }

  /// Largest deviation max_n ||sum_i B[n][i] B[n][i]^dagger - I||_max.
  double right_canonical_error() const;

 private:
  Mps() = default;
  void restore_right_canonical(std::size_t from_site);

  std::vector<SiteTensor> sites_;
  std::vector<RealVector> schmidt_;
  TruncationSettings settings_;
  bool validate_gates_ = false;
  double last_renormalization_ = 1.0;
};

/// coefficient * <psi| P |psi> by a left-to-right transfer-matrix sweep.
/// Sites past the last non-identity factor contract to the identity in
/// right-canonical form and are skipped.
Complex expectation(const Mps& state, const PauliString& p);

/// Per-term expectation values (coefficients included) in term order.
/// Strings sharing a leading operator prefix share the partial contraction.
std::vector<Complex> expectation_terms(const Mps& state, std::span<const PauliString> terms);

/// <psi|H|psi> summed in term order, constant included.
double energy(const Mps& state, const QubitHamiltonian& h);

/// A state together with the scalar it is multiplied by.
struct WeightedMps {
  Complex weight;
  Mps state;
};

/// p|psi> as a new state. Pauli factors are unitary so the tensors are
/// updated site by site without changing bond dimensions; the complex
/// coefficient of `p` is returned as the weight.
WeightedMps apply_pauli_string(const Mps& state, const PauliString& p);

struct CompressedSum {
  Mps state;
  double log_norm = 0.0;
  double discarded_weight = 0.0;  // summed over bonds

  double norm() const;
};

/// sum_j w_j |psi_j> as norm * |result>. The terms are stacked into one MPS
/// by bond-wise direct sum, brought into left-canonical form by a QR sweep,
/// then truncated right to left with SVDs so every site ends right-canonical
/// with its exact Schmidt vector.
CompressedSum add_and_compress(std::span<const WeightedMps> terms, TruncationSettings settings);

/// <bra|ket>.
Complex inner(const Mps& bra, const Mps& ket);

/// <bra| op_site |ket> for a single-site operator.
Complex inner(const Mps& bra, const Mps& ket, const ComplexMatrix& op, std::size_t site);

/// Dense amplitudes, qubit 0 most significant. Limited to 26 qubits.
ComplexVector to_statevector(const Mps& state);

inline constexpr std::size_t kMaxDenseQubits = 26;

}  // namespace dmps
