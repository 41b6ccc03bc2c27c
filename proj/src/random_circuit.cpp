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

#include "dmps/random_circuit.hpp"

#include <algorithm>
#include <numbers>
#include <set>

#include "dmps/errors.hpp"

namespace dmps {

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> n01;
  ComplexMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = Complex(n01(rng), n01(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ParametricCircuit random_circuit(const RandomCircuitOptions& opts, Rng& rng) {
  if (opts.n_qubits < 1) throw InvalidInput("random_circuit: need at least one qubit");
  if (opts.n_parametric > opts.n_gates) throw InvalidInput("random_circuit: more parametric gates than gates");
  const bool can_pair = opts.n_qubits >= 2;

  ParametricCircuit c;
  c.n_qubits = opts.n_qubits;
  c.n_slots = opts.n_parametric;

  std::vector<char> parametric(opts.n_gates, 0);
  std::fill_n(parametric.begin(), opts.n_parametric, 1);
  std::shuffle(parametric.begin(), parametric.end(), rng);

  std::uniform_int_distribution<std::size_t> qubit(0, opts.n_qubits - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const GateKind rotations[] = {GateKind::Rx, GateKind::Ry, GateKind::Rz};
  const GateKind fixed1[] = {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S, GateKind::Sdg};
  const GateKind fixed2[] = {GateKind::CNOT, GateKind::CZ, GateKind::SWAP};

  std::size_t slot = 0;
  for (std::size_t i = 0; i < opts.n_gates; ++i) {
    if (parametric[i]) {
      c.gates.push_back(gates::rotation(rotations[rng() % 3], qubit(rng), slot++));
      continue;
    }
    if (can_pair && unit(rng) < opts.two_qubit_fraction) {
      std::size_t a = qubit(rng), b;
      if (opts.long_range) {
        do b = qubit(rng); while (b == a);
      } else {
        a = std::min(a, opts.n_qubits - 2);
        b = a + 1;
        if (rng() % 2) std::swap(a, b);
      }
      if (opts.generic && rng() % 4 == 0) {
        c.gates.push_back(gates::generic2(a, b, random_unitary(4, rng)));
      } else {
        Gate g;
        g.kind = fixed2[rng() % 3];
        g.qubits = {a, b};
        c.gates.push_back(std::move(g));
      }
      continue;
    }
    const auto q = qubit(rng);
    const auto pick = rng() % 10;
    if (pick < 6) {
      Gate g;
      g.kind = fixed1[pick];
      g.qubits = {q, q};
      c.gates.push_back(std::move(g));
    } else if (pick < 9 || !opts.generic) {
      c.gates.push_back(gates::fixed_rotation(rotations[rng() % 3], q, angle(rng)));
    } else {
      c.gates.push_back(gates::generic1(q, random_unitary(2, rng)));
    }
  }
  return c;
}

QubitHamiltonian random_hamiltonian(std::size_t n_qubits, std::size_t n_terms, std::size_t max_weight, Rng& rng) {
  if (n_qubits < 1 || max_weight < 1) throw InvalidInput("random_hamiltonian: empty register or weight");
  std::uniform_int_distribution<std::size_t> qubit(0, n_qubits - 1);
  std::uniform_int_distribution<std::size_t> weight(1, std::min(max_weight, n_qubits));
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::set<std::map<std::size_t, Pauli>> seen;
  std::vector<PauliString> terms;
  std::size_t attempts = 0;
  while (terms.size() < n_terms) {
    if (++attempts > 100 * n_terms + 1000) throw InvalidInput("random_hamiltonian: not enough distinct strings");
    std::map<std::size_t, Pauli> ops;
    const auto w = weight(rng);
    while (ops.size() < w) ops[qubit(rng)] = static_cast<Pauli>(1 + rng() % 3);
    if (!seen.insert(ops).second) continue;
    terms.emplace_back(coeff(rng), std::move(ops));
  }
  QubitHamiltonian h;
  h.n_qubits = n_qubits;
  h.terms = std::move(terms);
  h.constant = coeff(rng);
  return h;
}

std::vector<double> random_angles(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(n);
  for (auto& v : out) v = angle(rng);
  return out;
}

}  // namespace dmps
