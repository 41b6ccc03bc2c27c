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

#include "dmps/fcidump.hpp"
#include "dmps/pauli.hpp"

namespace dmps {

struct LadderOp {
  std::size_t mode;
  bool creation;
};

/// coefficient * ops[0] ops[1] ... (leftmost acts last).
struct FermionTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<LadderOp> ops;
};

struct FermionOperator {
  std::size_t n_modes = 0;
  std::vector<FermionTerm> terms;
  double constant = 0.0;
};

/// Spin-orbital index of spatial orbital p with spin 0 (alpha) or 1 (beta).
inline std::size_t spin_orbital(std::size_t p, int spin) { return 2 * p + static_cast<std::size_t>(spin); }

/// Second-quantized electronic Hamiltonian on 2 * n_orbitals modes,
///   sum h_pq a+_p a_q + 1/2 sum (ps|qr) a+_p a+_q a_r a_s + e_core,
/// with spin summed over in the interleaved ordering.
FermionOperator build_fermionic_hamiltonian(const MolecularIntegrals& mi);

/// Qubit image of one ladder product, unsimplified.
std::vector<PauliString> jordan_wigner_terms(const FermionTerm& term);

/// Jordan-Wigner image with like strings merged and |c| < prune dropped.
QubitHamiltonian jordan_wigner(const FermionOperator& op, double prune = 1e-12);

}  // namespace dmps
