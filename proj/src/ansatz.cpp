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

#include "dmps/ansatz.hpp"

#include <cmath>
#include <numbers>

#include "dmps/errors.hpp"
#include "dmps/fermion.hpp"

namespace dmps {

std::vector<int> hf_reference(std::size_t n_electrons, std::size_t n_qubits) {
  if (n_electrons > n_qubits) throw InvalidInput("more electrons than spin-orbitals");
  std::vector<int> bits(n_qubits, 0);
  std::fill_n(bits.begin(), n_electrons, 1);
  return bits;
}

std::vector<Excitation> uccsd_pool(std::size_t n_electrons, std::size_t n_qubits) {
  if (n_electrons > n_qubits) throw InvalidInput("more electrons than spin-orbitals");
  const auto ne = n_electrons, nq = n_qubits;
  std::vector<Excitation> pool;
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t a = ne; a < nq; ++a) {
      if (i % 2 != a % 2) continue;
      pool.push_back({Excitation::Kind::Single, {i, a}, pool.size()});
    }
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = i + 1; j < ne; ++j)
      for (std::size_t a = ne; a < nq; ++a)
        for (std::size_t b = a + 1; b < nq; ++b) {
          const auto occ_alpha = (i % 2 == 0) + (j % 2 == 0);
          const auto vir_alpha = (a % 2 == 0) + (b % 2 == 0);
          if (occ_alpha != vir_alpha) continue;
          pool.push_back({Excitation::Kind::Double, {i, j, a, b}, pool.size()});
        }
  return pool;
}

std::vector<Excitation> limit_pool(const std::vector<Excitation>& pool, std::size_t limit) {
  if (limit == 0 || limit >= pool.size()) return pool;
  std::vector<Excitation> out;
  for (std::size_t k = 0; k < limit; ++k) {
    // Midpoints of `limit` equal bins.
    auto e = pool[(2 * k + 1) * pool.size() / (2 * limit)];
    e.slot = k;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<PauliString> cluster_to_pauli(const Excitation& e, std::size_t n_qubits) {
  for (auto q : e.indices) {
    if (q >= n_qubits) throw InvalidInput("excitation index exceeds the register");
  }
  FermionOperator op;
  op.n_modes = n_qubits;
  if (e.kind == Excitation::Kind::Single) {
    if (e.indices.size() != 2) throw InvalidInput("single excitation needs two indices");
    const auto i = e.indices[0], a = e.indices[1];
    op.terms.push_back({1.0, {{a, true}, {i, false}}});
    op.terms.push_back({-1.0, {{i, true}, {a, false}}});
  } else {
    if (e.indices.size() != 4) throw InvalidInput("double excitation needs four indices");
    const auto i = e.indices[0], j = e.indices[1], a = e.indices[2], b = e.indices[3];
    op.terms.push_back({1.0, {{a, true}, {b, true}, {j, false}, {i, false}}});
    op.terms.push_back({-1.0, {{i, true}, {j, true}, {b, false}, {a, false}}});
  }
  return jordan_wigner(op).terms;
}

void append_pauli_rotation(ParametricCircuit& c, const PauliString& p, std::size_t slot, double scale) {
  if (p.is_identity()) return;
  std::vector<std::size_t> qs;
  for (const auto& [q, op] : p.ops) {
    qs.push_back(q);
    if (op == Pauli::X) c.gates.push_back(gates::h(q));
    if (op == Pauli::Y) c.gates.push_back(gates::fixed_rotation(GateKind::Rx, q, std::numbers::pi / 2));
  }
  for (std::size_t k = 0; k + 1 < qs.size(); ++k) c.gates.push_back(gates::cnot(qs[k], qs[k + 1]));
  c.gates.push_back(gates::rz(qs.back(), slot, scale));
  for (std::size_t k = qs.size() - 1; k > 0; --k) c.gates.push_back(gates::cnot(qs[k - 1], qs[k]));
  for (const auto& [q, op] : p.ops) {
    if (op == Pauli::X) c.gates.push_back(gates::h(q));
    if (op == Pauli::Y) c.gates.push_back(gates::fixed_rotation(GateKind::Rx, q, -std::numbers::pi / 2));
  }
}

ParametricCircuit trotterized_circuit(const std::vector<Excitation>& pool, std::size_t n_qubits,
                                      std::size_t trotter_steps) {
  if (trotter_steps < 1) throw InvalidInput("trotter_steps must be at least 1");
  ParametricCircuit c;
  c.n_qubits = n_qubits;
  c.n_slots = pool.size();
  std::vector<std::vector<PauliString>> strings;
  strings.reserve(pool.size());
  for (const auto& e : pool) {
    if (e.slot >= pool.size()) throw InvalidInput("excitation slot out of range");
    strings.push_back(cluster_to_pauli(e, n_qubits));
  }
  const double k = static_cast<double>(trotter_steps);
  for (std::size_t step = 0; step < trotter_steps; ++step) {
    for (std::size_t n = 0; n < pool.size(); ++n) {
      for (const auto& p : strings[n]) {
        // theta * (i c P) / k = i * alpha * P with alpha = theta c / k; RZ(-2 alpha)
        append_pauli_rotation(c, p, pool[n].slot, -2.0 * p.coefficient.imag() / k);
      }
    }
  }
  c.validate();
  return c;
}

}  // namespace dmps
