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
#include <numbers>
#include <sstream>

#include "dmps/circuit.hpp"
#include "dmps/linalg.hpp"
#include "dmps/mps.hpp"
#include "dmps/random_circuit.hpp"
#include "dmps/snapshot.hpp"
#include "dmps/statevector.hpp"

using namespace dmps;

namespace {

const TruncationSettings kExact{1u << 10, 0.0};

std::vector<int> zeros(std::size_t n) { return std::vector<int>(n, 0); }

ComplexMatrix mat(std::initializer_list<Complex> v) {
  const auto d = static_cast<Eigen::Index>(std::lround(std::sqrt(v.size())));
  ComplexMatrix m(d, d);
  auto it = v.begin();
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = *it++;
  return m;
}

ComplexMatrix hadamard() { return gate_matrix(gates::h(0), {}); }
ComplexMatrix cnot() { return gate_matrix(gates::cnot(0, 1), {}); }

// Random state from a brick of Haar two-qubit gates.
Mps random_state(std::size_t n, Rng& rng, TruncationSettings s = kExact, int layers = 4) {
  Mps m = Mps::product_state(zeros(n), s);
  for (int l = 0; l < layers; ++l)
    for (std::size_t q = l % 2; q + 1 < n; q += 2) m.apply_2q_nn(random_unitary(4, rng), q);
  return m;
}

// Dense singular values of the cut between qubits [0, bond) and [bond, n).
Eigen::VectorXd dense_schmidt(const ComplexVector& v, std::size_t n, std::size_t bond) {
  const auto rows = Eigen::Index{1} << bond;
  const auto cols = Eigen::Index{1} << (n - bond);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

}  // namespace

TEST_CASE("product states") {
  const std::vector<int> b00{0, 0};
  auto m = Mps::product_state(b00);
  CHECK(expectation(m, PauliString::from_label("Z0")).real() == 1.0);
  CHECK(expectation(m, PauliString::from_label("Z1")).real() == 1.0);

  const std::vector<int> b101{1, 0, 1};
  m = Mps::product_state(b101);
  CHECK(expectation(m, PauliString::from_label("Z0 Z2")).real() == 1.0);
  CHECK(expectation(m, PauliString::from_label("Z0 Z1")).real() == -1.0);

  const std::vector<int> b01{0, 1};
  const auto v = to_statevector(Mps::product_state(b01));
  CHECK(v.size() == 4);
  CHECK(v[1] == Complex(1.0));
  CHECK(v.norm() == 1.0);
  CHECK(Mps::product_state(b01).max_bond_dimension() == 1);

  CHECK_THROWS_AS(Mps::product_state(std::vector<int>{}), InvalidInput);
  CHECK_THROWS_AS(Mps::product_state(std::vector<int>{2}), InvalidInput);
}

TEST_CASE("single-qubit gates") {
  auto m = Mps::product_state(zeros(1));
  m.apply_1q(pauli_matrix(Pauli::X), 0);
  CHECK(std::abs(to_statevector(m)[1]) == 1.0);

  m = Mps::product_state(zeros(1));
  m.apply_1q(hadamard(), 0);
  CHECK(std::abs(expectation(m, PauliString::from_label("X0")) - 1.0) <= 1e-12);
  CHECK(std::abs(expectation(m, PauliString::from_label("Z0"))) <= 1e-12);

  const double theta = 0.3;
  const std::vector<double> p{theta};
  m.apply_1q(gate_matrix(gates::rz(0, 0), p), 0);
  // Rz(t)|+> = (e^{-it/2}|0> + e^{it/2}|1>)/sqrt2, so <X> = cos t
  CHECK(std::abs(expectation(m, PauliString::from_label("X0")).real() - std::cos(theta)) <= 1e-12);

  m.set_gate_validation(true);
  CHECK_THROWS_AS(m.apply_1q(mat({1, 1, 0, 1}), 0), InvalidInput);
  CHECK_THROWS_AS(m.apply_1q(hadamard(), 3), InvalidInput);
}

TEST_CASE("two-qubit gates") {
  const std::vector<int> b10{1, 0};
  auto m = Mps::product_state(b10);
  CHECK(m.apply_2q_nn(cnot(), 0) == 0.0);
  CHECK(std::abs(to_statevector(m)[3]) == doctest::Approx(1.0));

  m = Mps::product_state(zeros(2));
  m.apply_1q(hadamard(), 0);
  m.apply_2q_nn(cnot(), 0);
  const auto& lam = m.schmidt(1);
  REQUIRE(lam.size() == 2);
  CHECK(std::abs(lam[0] - 1 / std::numbers::sqrt2) <= 1e-12);
  CHECK(std::abs(lam[1] - 1 / std::numbers::sqrt2) <= 1e-12);
  CHECK(std::abs(expectation(m, PauliString::from_label("X0 X1")) - 1.0) <= 1e-12);
  CHECK(std::abs(expectation(m, PauliString::from_label("X0"))) <= 1e-12);
  const auto v = to_statevector(m);
  CHECK(std::abs(v[0] - 1 / std::numbers::sqrt2) <= 1e-12);
  CHECK(std::abs(v[3] - 1 / std::numbers::sqrt2) <= 1e-12);

  CHECK_THROWS_AS(m.apply_2q_nn(cnot(), 1), InvalidInput);
}

TEST_CASE("random two-qubit unitary against the dense oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_state(6, rng, {8, 0.0}, 3);
    StateVector sv;
    sv.n_qubits = 6;
    sv.amplitudes = to_statevector(m);
    const auto u = random_unitary(4, rng);
    const std::size_t site = rng() % 5;
    m.apply_2q_nn(u, site);
    sv_apply_gate(sv, gates::generic2(site, site + 1, u), {});
    CHECK(fidelity(to_statevector(m), sv.amplitudes) >= 1 - 1e-12);
    CHECK(m.right_canonical_error() <= 1e-10);
  }
}

TEST_CASE("gates on disjoint bonds commute") {
  Rng rng(4);
  const auto u = random_unitary(4, rng), w = random_unitary(4, rng);
  auto a = random_state(5, rng);
  auto b = a;
  a.apply_2q_nn(u, 0);
  a.apply_2q_nn(w, 2);
  b.apply_2q_nn(w, 2);
  b.apply_2q_nn(u, 0);
  CHECK(fidelity(to_statevector(a), to_statevector(b)) >= 1 - 1e-12);
}

TEST_CASE("Schmidt vectors match the dense bipartition spectrum") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 4 + trial;
    auto m = random_state(n, rng, kExact, 6);
    const auto v = to_statevector(m);
    for (std::size_t bond = 1; bond < n; ++bond) {
      const auto dense = dense_schmidt(v, n, bond);
      const auto& lam = m.schmidt(bond);
      for (Eigen::Index k = 0; k < dense.size(); ++k) {
        const double ours = k < lam.size() ? lam[k] : 0.0;
        CHECK(std::abs(ours - dense[k]) <= 1e-8);
      }
      double sum = lam.squaredNorm();
      CHECK(std::abs(sum - 1.0) <= 1e-10);
      for (Eigen::Index k = 1; k < lam.size(); ++k) CHECK(lam[k] <= lam[k - 1]);
    }
  }
}

TEST_CASE("truncating gates keep canonical form, norm and bond limit") {
  Rng rng(99);
  const TruncationSettings s{4, 1e-6};
  auto m = Mps::product_state(zeros(10), s);
  double total = 0;
  for (int g = 0; g < 300; ++g) {
    total += m.apply_2q_nn(random_unitary(4, rng), rng() % 9);
    CHECK(m.right_canonical_error() <= 1e-10);
    CHECK(std::abs(inner(m, m) - 1.0) <= 1e-10);
    CHECK(m.max_bond_dimension() <= 4);
  }
  CHECK(total > 0);
}

TEST_CASE("expectations and inner products against the dense oracle") {
  Rng rng(31);
  const auto m = random_state(8, rng);
  const auto v = to_statevector(m);
  CHECK(std::abs(inner(m, m) - 1.0) <= 1e-12);
  for (int t = 0; t < 20; ++t) {
    const auto h = random_hamiltonian(8, 1, 8, rng);
    const auto& p = h.terms.front();
    const Complex dense = v.dot(sv_apply_pauli(v, 8, p));
    CHECK(std::abs(expectation(m, p) - dense) <= 1e-10);
  }
  const auto other = random_state(8, rng);
  CHECK(std::abs(inner(m, other) - v.dot(to_statevector(other))) <= 1e-12);
  const auto op = random_unitary(2, rng);
  StateVector sv{8, to_statevector(other)};
  sv_apply_gate(sv, gates::generic1(3, op), {});
  CHECK(std::abs(inner(m, other, op, 3) - v.dot(sv.amplitudes)) <= 1e-12);

  const std::vector<int> b00{0, 0}, b11{1, 1};
  CHECK(std::abs(inner(Mps::product_state(b00), Mps::product_state(b11))) == 0.0);
  CHECK_THROWS_AS(inner(m, Mps::product_state(b00)), InvalidInput);
  CHECK_THROWS_AS(expectation(Mps::product_state(b00), PauliString::from_label("Z2")), InvalidInput);
}

TEST_CASE("grouped expectation values equal one-by-one values bitwise") {
  Rng rng(2);
  const auto m = random_state(7, rng);
  const auto h = random_hamiltonian(7, 60, 4, rng);
  const auto all = expectation_terms(m, h.terms);
  for (std::size_t k = 0; k < h.terms.size(); ++k) CHECK(all[k] == expectation(m, h.terms[k]));
}

TEST_CASE("Pauli strings as new states") {
  Rng rng(6);
  const auto m = random_state(6, rng);
  const auto before = to_statevector(m);

  const auto id = apply_pauli_string(m, PauliString(Complex(0.5, 0.25), {}));
  CHECK(id.weight == Complex(0.5, 0.25));
  CHECK((to_statevector(id.state) - before).norm() == 0.0);

  const std::vector<int> b1{1, 0, 0};
  const auto z = apply_pauli_string(Mps::product_state(b1), PauliString::from_label("Z0", 2.0));
  CHECK(z.weight * to_statevector(z.state)[4] == Complex(-2.0));

  const auto p = PauliString::from_label("X0 Y1", Complex(0.3, -0.1));
  const auto r = apply_pauli_string(m, p);
  const ComplexVector dense = sv_apply_pauli(before, 6, p);
  CHECK((r.weight * to_statevector(r.state) - dense).norm() <= 1e-12);
  CHECK((to_statevector(m) - before).norm() == 0.0);
}

TEST_CASE("add_and_compress") {
  Rng rng(12);
  const auto psi = random_state(5, rng);
  std::vector<WeightedMps> one{{1.0, psi}};
  const auto single = add_and_compress(one, kExact);
  CHECK(std::abs(single.norm() - 1.0) <= 1e-12);
  CHECK(fidelity(to_statevector(single.state), to_statevector(psi)) >= 1 - 1e-12);

  const std::vector<int> b00{0, 0}, b11{1, 1};
  const double r = 1 / std::numbers::sqrt2;
  std::vector<WeightedMps> bell{{r, Mps::product_state(b00)}, {r, Mps::product_state(b11)}};
  const auto sum = add_and_compress(bell, {2, 0.0});
  CHECK(std::abs(sum.norm() - 1.0) <= 1e-12);
  const auto v = to_statevector(sum.state);
  CHECK(std::abs(std::abs(v[0]) - r) <= 1e-12);
  CHECK(std::abs(std::abs(v[3]) - r) <= 1e-12);
  CHECK(sum.state.right_canonical_error() <= 1e-12);

  // H|psi> in the exact regime: <psi| norm * result> = <psi|H|psi>
  const auto m = random_state(6, rng);
  const auto h = random_hamiltonian(6, 10, 4, rng);
  std::vector<WeightedMps> parts;
  for (const auto& t : h.terms) parts.push_back(apply_pauli_string(m, t));
  const auto hpsi = add_and_compress(parts, {64, 0.0});
  Complex direct = 0;
  for (const auto& t : h.terms) direct += expectation(m, t);
  CHECK(std::abs(hpsi.norm() * inner(m, hpsi.state) - direct) <= 1e-10);
  CHECK(hpsi.state.right_canonical_error() <= 1e-10);
  // stored Schmidt vectors are the true spectra
  const auto dv = to_statevector(hpsi.state);
  for (std::size_t bond = 1; bond < 6; ++bond) {
    const auto dense = dense_schmidt(dv, 6, bond);
    const auto& lam = hpsi.state.schmidt(bond);
    for (Eigen::Index k = 0; k < lam.size(); ++k) CHECK(std::abs(lam[k] - dense[k]) <= 1e-8);
  }

  std::vector<WeightedMps> cancel{{1.0, psi}, {-1.0, psi}};
  CHECK_THROWS_AS(add_and_compress(cancel, kExact), DegenerateState);
  std::vector<WeightedMps> mismatch{{1.0, psi}, {1.0, m}};
  CHECK_THROWS_AS(add_and_compress(mismatch, kExact), InvalidInput);
  CHECK_THROWS_AS(add_and_compress({}, kExact), InvalidInput);
}

TEST_CASE("to_statevector guard") {
  CHECK_THROWS_AS(to_statevector(Mps::product_state(zeros(27))), ResourceError);
}

TEST_CASE("snapshot round trip is exact") {
  Rng rng(1);
  const auto m = random_state(6, rng, {16, 1e-9});
  std::stringstream buf;
  write_snapshot(m, buf);
  const auto back = read_snapshot(buf);
  CHECK(back.size() == m.size());
  CHECK(back.settings().d_max == 16);
  CHECK(back.settings().eps == 1e-9);
  CHECK((to_statevector(back) - to_statevector(m)).norm() == 0.0);
  for (std::size_t b = 0; b <= 6; ++b) CHECK(back.schmidt(b) == m.schmidt(b));

  std::stringstream bad("DMPS2xxxxxxxx");
  CHECK_THROWS_AS(read_snapshot(bad), InvalidInput);
  std::string s = buf.str();
  std::stringstream trunc(std::string(s.begin(), s.begin() + 40));
  write_snapshot(m, buf);
  CHECK_THROWS_AS(read_snapshot(trunc), InvalidInput);
}

TEST_CASE("SWAP across a degenerate spectrum stays finite") {
  // A UCCSD state at D = 8 whose bond-4 spectrum has exact pairs; a plain
  // divide-and-conquer SVD of the swapped pair returns NaN vectors.
  std::ifstream in(std::string(DMPS_DATA_DIR) + "/degenerate_swap.dmps", std::ios::binary);
  REQUIRE(in);
  Mps m = read_snapshot(in);
  const ComplexVector before = to_statevector(m);
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  m.apply_2q_nn(swap, 4);
  for (std::size_t n = 0; n < m.size(); ++n) {
    CHECK(m.site(n)[0].allFinite());
    CHECK(m.site(n)[1].allFinite());
  }
  CHECK(m.right_canonical_error() <= 1e-10);
  const ComplexVector after = to_statevector(m);
  CHECK(std::abs(after.norm() - 1.0) <= 1e-10);
  // SWAP of qubits 4 and 5 on the dense vector
  const std::size_t n = m.size();
  ComplexVector expected(before.size());
  for (Eigen::Index k = 0; k < before.size(); ++k) {
    const std::size_t b4 = (k >> (n - 1 - 4)) & 1, b5 = (k >> (n - 1 - 5)) & 1;
    std::size_t j = static_cast<std::size_t>(k);
    if (b4 != b5) j ^= (std::size_t{1} << (n - 1 - 4)) | (std::size_t{1} << (n - 1 - 5));
    expected[static_cast<Eigen::Index>(j)] = before[k];
  }
  CHECK(std::abs(expected.dot(after)) >= 1 - 1e-6);
}
