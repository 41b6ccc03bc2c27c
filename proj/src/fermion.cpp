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

#include "dmps/fermion.hpp"

#include "dmps/errors.hpp"

namespace dmps {

FermionOperator build_fermionic_hamiltonian(const MolecularIntegrals& mi) {
  const auto n = mi.n_orbitals;
  FermionOperator op;
  op.n_modes = 2 * n;
  op.constant = mi.e_core;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const double v = mi.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      if (v == 0.0) continue;
      for (int s = 0; s < 2; ++s) {
        op.terms.push_back({v, {{spin_orbital(p, s), true}, {spin_orbital(q, s), false}}});
      }
    }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const double v = mi.g(p, s, q, r);
          if (v == 0.0) continue;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
              const auto P = spin_orbital(p, a), Q = spin_orbital(q, b);
              const auto R = spin_orbital(r, b), S = spin_orbital(s, a);
              if (P == Q || R == S) continue;
              op.terms.push_back({0.5 * v, {{P, true}, {Q, true}, {R, false}, {S, false}}});
            }
        }
  return op;
}

std::vector<PauliString> jordan_wigner_terms(const FermionTerm& term) {
  std::vector<PauliString> acc{PauliString(term.coefficient, {})};
  for (const auto& l : term.ops) {
    // a+_p = (X_p - i Y_p)/2 Z_{p-1}...Z_0, a_p = (X_p + i Y_p)/2 Z_{p-1}...Z_0
    std::map<std::size_t, Pauli> zs;
    for (std::size_t k = 0; k < l.mode; ++k) zs.emplace(k, Pauli::Z);
    auto x_part = zs, y_part = zs;
    x_part[l.mode] = Pauli::X;
    y_part[l.mode] = Pauli::Y;
    const PauliString px(0.5, std::move(x_part));
    const PauliString py(l.creation ? Complex(0, -0.5) : Complex(0, 0.5), std::move(y_part));
    std::vector<PauliString> next;
    next.reserve(2 * acc.size());
    for (const auto& a : acc) {
      next.push_back(a * px);
      next.push_back(a * py);
    }
    acc = std::move(next);
  }
  return acc;
}

QubitHamiltonian jordan_wigner(const FermionOperator& op, double prune) {
  std::vector<PauliString> all;
  for (const auto& t : op.terms) {
    for (const auto& l : t.ops) {
      if (l.mode >= op.n_modes) throw InvalidInput("ladder operator mode exceeds n_modes");
    }
    auto strings = jordan_wigner_terms(t);
    all.insert(all.end(), std::make_move_iterator(strings.begin()), std::make_move_iterator(strings.end()));
  }
  return make_hamiltonian(op.n_modes, all, op.constant, prune);
}

}  // namespace dmps
