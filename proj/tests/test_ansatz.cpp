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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "dmps/ansatz.hpp"
#include "dmps/errors.hpp"
#include "dmps/fcidump.hpp"
#include "dmps/fermion.hpp"
#include "dmps/random_circuit.hpp"
#include "dmps/statevector.hpp"

using namespace dmps;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(DMPS_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Brute-force count of spin-preserving singles and doubles.
std::size_t brute_force_pool_size(std::size_t ne, std::size_t nq) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t a = ne; a < nq; ++a) count += (i % 2) == (a % 2);
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j)
      for (std::size_t a = ne; a < nq; ++a)
        for (std::size_t b = ne; b < nq; ++b) {
          if (!(i < j && a < b)) continue;
          const int sz_occ = (i % 2 ? -1 : 1) + (j % 2 ? -1 : 1);
          const int sz_vir = (a % 2 ? -1 : 1) + (b % 2 ? -1 : 1);
          count += sz_occ == sz_vir;
        }
  return count;
}

ComplexVector apply_routed_mps(const ParametricCircuit& c, std::span<const double> params, std::size_t ne) {
  auto bits = hf_reference(ne, c.n_qubits);
  auto m = Mps::product_state(bits, {std::size_t{1} << (c.n_qubits / 2), 0.0});
  apply_circuit(m, route_to_nearest_neighbor(c), params);
  return to_statevector(m);
}

}  // namespace

TEST_CASE("Hartree-Fock reference bits") {
  CHECK(hf_reference(2, 4) == std::vector<int>{1, 1, 0, 0});
  CHECK(hf_reference(0, 3) == std::vector<int>{0, 0, 0});
  CHECK_THROWS_AS(hf_reference(5, 4), InvalidInput);

  const auto mi = parse_fcidump(data("h2_sto3g.fcidump"));
  const auto h = jordan_wigner(build_fermionic_hamiltonian(mi));
  const auto hf = hf_reference(2, 4);
  // determinant energy from the integrals: sum 2 h_ii + sum (2 J - K) + core over occupied i
  const double e_det = mi.e_core + 2 * mi.h(0, 0) + mi.g(0, 0, 0, 0);
  CHECK(std::abs(sv_expectation(StateVector::basis(hf), h) - e_det) <= 1e-10);
  CHECK(std::abs(e_det - (-1.116684387085)) <= 1e-8);
}

TEST_CASE("excitation pools") {
  const auto pool = uccsd_pool(2, 4);
  REQUIRE(pool.size() == 3);
  CHECK(pool[0].indices == std::vector<std::size_t>{0, 2});
  CHECK(pool[1].indices == std::vector<std::size_t>{1, 3});
  CHECK(pool[2].indices == std::vector<std::size_t>{0, 1, 2, 3});
  for (std::size_t k = 0; k < pool.size(); ++k) CHECK(pool[k].slot == k);
  CHECK(uccsd_pool(0, 6).empty());
  CHECK(uccsd_pool(4, 8).size() == brute_force_pool_size(4, 8));
  CHECK(uccsd_pool(4, 12).size() == brute_force_pool_size(4, 12));
  CHECK(uccsd_pool(3, 10).size() == brute_force_pool_size(3, 10));

  const auto full = uccsd_pool(4, 12);
  const auto few = limit_pool(full, 5);
  REQUIRE(few.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(few[k].slot == k);
  CHECK(limit_pool(full, 0).size() == full.size());
}

TEST_CASE("cluster operators are anti-Hermitian") {
  Excitation single{Excitation::Kind::Single, {0, 2}, 0};
  const auto s = cluster_to_pauli(single, 4);
  REQUIRE(s.size() == 2);
  CHECK(s[0].label() == "X0 Z1 Y2");
  CHECK(s[1].label() == "Y0 Z1 X2");
  CHECK(std::abs(s[0].coefficient.real()) <= 1e-12);
  CHECK(std::abs(std::abs(s[0].coefficient.imag()) - 0.5) <= 1e-12);
  CHECK(std::abs(s[0].coefficient + s[1].coefficient) <= 1e-12);

  Excitation dbl{Excitation::Kind::Double, {0, 1, 2, 3}, 0};
  CHECK(cluster_to_pauli(dbl, 4).size() == 8);

  // dense check: the strings reproduce T - T^dagger
  Rng rng(6);
  const auto pool = uccsd_pool(3, 8);
  for (int t = 0; t < 6; ++t) {
    const auto& e = pool[rng() % pool.size()];
    ComplexMatrix sum = ComplexMatrix::Zero(256, 256);
    for (const auto& p : cluster_to_pauli(e, 8)) {
      CHECK(std::abs(p.coefficient.real()) <= 1e-12);
      sum += pauli_string_matrix(p, 8);
    }
    CHECK((sum + sum.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    FermionOperator op;
    op.n_modes = 8;
    if (e.kind == Excitation::Kind::Single) {
      op.terms.push_back({1.0, {{e.indices[1], true}, {e.indices[0], false}}});
    } else {
      op.terms.push_back({1.0, {{e.indices[2], true}, {e.indices[3], true}, {e.indices[1], false}, {e.indices[0], false}}});
    }
    const ComplexMatrix t_dense = fock_matrix(op);
    CHECK((sum - (t_dense - t_dense.adjoint())).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("compiled Pauli exponentials equal the dense exponential") {
  Rng rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 4; ++t) {
      const auto p = random_hamiltonian(n, 1, n, rng).terms[0];
      const double theta = u(rng), scale = u(rng);
      ParametricCircuit c;
      c.n_qubits = n;
      c.n_slots = 1;
      append_pauli_rotation(c, p, 0, scale);
      const std::vector<double> params{theta};
      const double alpha = -scale * theta / 2;
      PauliString unit = p;
      unit.coefficient = 1.0;
      const ComplexMatrix expected = (Complex(0, alpha) * pauli_string_matrix(unit, n)).exp();
      CHECK((circuit_unitary(c, params) - expected).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((circuit_unitary(route_to_nearest_neighbor(c), params) - expected).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("trotterized UCCSD circuits") {
  const auto single = std::vector<Excitation>{uccsd_pool(2, 4)[0]};
  const auto c1 = trotterized_circuit(single, 4);
  CHECK(c1.n_slots == 1);
  CHECK(c1.n_parametric_gates() == 2);
  const auto hf = hf_reference(2, 4);
  const auto start = StateVector::basis(hf).amplitudes;
  const std::vector<double> zero{0.0};
  CHECK(fidelity(apply_routed_mps(c1, zero, 2), start) >= 1 - 1e-12);

  // small angle against the dense exponential of the compiled product
  const double theta = 1e-3;
  const std::vector<double> small{theta};
  ComplexMatrix product = ComplexMatrix::Identity(16, 16);
  for (const auto& p : cluster_to_pauli(single[0], 4)) {
    PauliString unit = p;
    unit.coefficient = 1.0;
    product = (Complex(0, theta * p.coefficient.imag()) * pauli_string_matrix(unit, 4)).exp() * product;
  }
  CHECK((apply_routed_mps(c1, small, 2) - product * start).norm() <= 1e-8);
  // and the first-order action of T - T^dagger
  ComplexMatrix gen = ComplexMatrix::Zero(16, 16);
  for (const auto& p : cluster_to_pauli(single[0], 4)) gen += pauli_string_matrix(p, 4);
  CHECK((apply_routed_mps(c1, small, 2) - (theta * gen).exp() * start).norm() <= 1e-8);

  CHECK(trotterized_circuit({}, 4).gates.empty());
  CHECK_THROWS_AS(trotterized_circuit(single, 4, 0), InvalidInput);

  const auto pool = uccsd_pool(4, 8);
  for (std::size_t k : {1u, 2u}) {
    const auto c = trotterized_circuit(pool, 8, k);
    CHECK(c.n_slots == pool.size());
    std::vector<double> zeros(pool.size(), 0.0);
    CHECK(fidelity(apply_routed_mps(c, zeros, 4), StateVector::basis(hf_reference(4, 8)).amplitudes) >= 1 - 1e-12);
  }
}

TEST_CASE("UCCSD conserves particle number") {
  Rng rng(13);
  const auto pool = uccsd_pool(4, 8);
  const auto c = trotterized_circuit(pool, 8);
  QubitHamiltonian num;
  num.n_qubits = 8;
  num.constant = 4.0;
  for (std::size_t k = 0; k < 8; ++k) num.terms.push_back(PauliString::from_label("Z" + std::to_string(k), -0.5));
  for (int t = 0; t < 3; ++t) {
    const auto params = random_angles(c.n_slots, rng);
    auto m = Mps::product_state(hf_reference(4, 8), {16, 0.0});
    apply_circuit(m, route_to_nearest_neighbor(c), params);
    CHECK(std::abs(energy(m, num) - 4.0) <= 1e-8);
  }
}
