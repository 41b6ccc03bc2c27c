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

#include "dmps/statevector.hpp"

#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "dmps/errors.hpp"

namespace dmps {

namespace {

using Index = std::uint64_t;

void check_size(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) {
    throw ResourceError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds the limit of " +
                        std::to_string(limit));
  }
}

Index bit_of(std::size_t n_qubits, std::size_t q) { return Index{1} << (n_qubits - 1 - q); }

struct Masks {
  Index flip = 0;
  Index phase = 0;
  int n_y = 0;
};

Masks masks_of(const PauliString& p, std::size_t n) {
  Masks m;
  for (const auto& [q, op] : p.ops) {
    if (q >= n) throw InvalidInput("Pauli string acts outside the register");
    const Index b = bit_of(n, q);
    if (op == Pauli::X || op == Pauli::Y) m.flip |= b;
    if (op == Pauli::Z || op == Pauli::Y) m.phase |= b;
    if (op == Pauli::Y) ++m.n_y;
  }
  return m;
}

// P = i^{n_y} X^{flip} Z^{phase}
Complex y_phase(int n_y) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[n_y % 4];
}

}  // namespace

StateVector StateVector::basis(std::span<const int> bits) {
  check_size(bits.size(), kMaxDenseQubits, "StateVector");
  StateVector sv;
  sv.n_qubits = bits.size();
  sv.amplitudes = ComplexVector::Zero(static_cast<Eigen::Index>(Index{1} << sv.n_qubits));
  Index idx = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q]) idx |= bit_of(sv.n_qubits, q);
  }
  sv.amplitudes[static_cast<Eigen::Index>(idx)] = 1.0;
  return sv;
}

StateVector StateVector::zero(std::size_t n_qubits) {
  std::vector<int> bits(n_qubits, 0);
  return basis(bits);
}

void sv_apply_gate(StateVector& sv, const Gate& g, std::span<const double> params) {
  const auto n = sv.n_qubits;
  const ComplexMatrix m = gate_matrix(g, params);
  auto& v = sv.amplitudes;
  const Index dim = Index{1} << n;
  if (g.arity() == 1) {
    if (g.qubits[0] >= n) throw InvalidInput("gate qubit out of range");
    const Index b = bit_of(n, g.qubits[0]);
    for (Index i = 0; i < dim; ++i) {
      if (i & b) continue;
      const auto i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | b);
      const Complex a0 = v[i0], a1 = v[i1];
      v[i0] = m(0, 0) * a0 + m(0, 1) * a1;
      v[i1] = m(1, 0) * a0 + m(1, 1) * a1;
    }
    return;
  }
  const auto [qa, qb] = g.qubits;
  if (qa >= n || qb >= n || qa == qb) throw InvalidInput("bad two-qubit gate qubits");
  const Index ba = bit_of(n, qa), bb = bit_of(n, qb);
  for (Index i = 0; i < dim; ++i) {
    if (i & (ba | bb)) continue;
    const Eigen::Index idx[4] = {static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i | bb),
                                 static_cast<Eigen::Index>(i | ba), static_cast<Eigen::Index>(i | ba | bb)};
    Complex in[4];
    for (int k = 0; k < 4; ++k) in[k] = v[idx[k]];
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0;
      for (int k = 0; k < 4; ++k) acc += m(r, k) * in[k];
      v[idx[r]] = acc;
    }
  }
}

StateVector sv_apply_circuit(StateVector sv, const ParametricCircuit& c, std::span<const double> params) {
  check_size(sv.n_qubits, kMaxDenseQubits, "sv_apply_circuit");
  if (sv.n_qubits != c.n_qubits) throw InvalidInput("circuit and state have different qubit counts");
  if (params.size() != c.n_slots) throw InvalidInput("parameter count does not match the circuit");
  for (const auto& g : c.gates) sv_apply_gate(sv, g, params);
  return sv;
}

ComplexVector sv_apply_pauli(const ComplexVector& v, std::size_t n_qubits, const PauliString& p) {
  const auto m = masks_of(p, n_qubits);
  const Complex c = p.coefficient * y_phase(m.n_y);
  ComplexVector out(v.size());
  for (Index i = 0; i < static_cast<Index>(v.size()); ++i) {
    const double sign = std::popcount(i & m.phase) % 2 ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(i ^ m.flip)] = c * sign * v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

ComplexVector sv_apply_hamiltonian(const ComplexVector& v, const QubitHamiltonian& h) {
  ComplexVector out = h.constant * v;
  for (const auto& t : h.terms) {
    const auto m = masks_of(t, h.n_qubits);
    const Complex c = t.coefficient * y_phase(m.n_y);
    for (Index i = 0; i < static_cast<Index>(v.size()); ++i) {
      const double sign = std::popcount(i & m.phase) % 2 ? -1.0 : 1.0;
      out[static_cast<Eigen::Index>(i ^ m.flip)] += c * sign * v[static_cast<Eigen::Index>(i)];
    }
  }
  return out;
}

double sv_expectation(const StateVector& sv, const QubitHamiltonian& h) {
  if (sv.n_qubits != h.n_qubits) throw InvalidInput("state and Hamiltonian have different qubit counts");
  return sv.amplitudes.dot(sv_apply_hamiltonian(sv.amplitudes, h)).real();
}

double fidelity(const ComplexVector& a, const ComplexVector& b) { return std::norm(a.dot(b)); }

ComplexMatrix pauli_string_matrix(const PauliString& p, std::size_t n_qubits) {
  check_size(n_qubits, kMaxDenseMatrixQubits, "pauli_string_matrix");
  const auto m = masks_of(p, n_qubits);
  const Complex c = p.coefficient * y_phase(m.n_y);
  const Index dim = Index{1} << n_qubits;
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Index i = 0; i < dim; ++i) {
    const double sign = std::popcount(i & m.phase) % 2 ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(i ^ m.flip), static_cast<Eigen::Index>(i)) = c * sign;
  }
  return out;
}

ComplexMatrix hamiltonian_matrix(const QubitHamiltonian& h) {
  check_size(h.n_qubits, kMaxDenseMatrixQubits, "hamiltonian_matrix");
  const auto dim = static_cast<Eigen::Index>(Index{1} << h.n_qubits);
  ComplexMatrix out = h.constant * ComplexMatrix::Identity(dim, dim);
  for (const auto& t : h.terms) out += pauli_string_matrix(t, h.n_qubits);
  return out;
}

ComplexMatrix circuit_unitary(const ParametricCircuit& c, std::span<const double> params) {
  check_size(c.n_qubits, kMaxDenseMatrixQubits, "circuit_unitary");
  const auto dim = static_cast<Eigen::Index>(Index{1} << c.n_qubits);
  ComplexMatrix u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector sv;
    sv.n_qubits = c.n_qubits;
    sv.amplitudes = ComplexVector::Unit(dim, col);
    u.col(col) = sv_apply_circuit(std::move(sv), c, params).amplitudes;
  }
  return u;
}

namespace {

constexpr Eigen::Index kDenseSectorLimit = 1024;

std::vector<Index> sector_basis(std::size_t n, std::optional<std::size_t> particles) {
  std::vector<Index> out;
  for (Index i = 0; i < (Index{1} << n); ++i) {
    if (!particles || static_cast<std::size_t>(std::popcount(i)) == *particles) out.push_back(i);
  }
  return out;
}

double dense_ground(const QubitHamiltonian& h, const std::vector<Index>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Index> position(std::size_t{1} << h.n_qubits, -1);
  for (Eigen::Index k = 0; k < d; ++k) position[basis[static_cast<std::size_t>(k)]] = k;
  ComplexMatrix m = h.constant * ComplexMatrix::Identity(d, d);
  for (const auto& t : h.terms) {
    const auto mk = masks_of(t, h.n_qubits);
    const Complex c = t.coefficient * y_phase(mk.n_y);
    for (Eigen::Index k = 0; k < d; ++k) {
      const Index i = basis[static_cast<std::size_t>(k)];
      const auto row = position[i ^ mk.flip];
      if (row < 0) continue;
      m(row, k) += c * (std::popcount(i & mk.phase) % 2 ? -1.0 : 1.0);
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  return es.eigenvalues()[0];
}

double lanczos_ground(const QubitHamiltonian& h, const std::vector<Index>& basis) {
  const auto dim = static_cast<Eigen::Index>(Index{1} << h.n_qubits);
  ComplexVector mask = ComplexVector::Zero(dim);
  for (auto i : basis) mask[static_cast<Eigen::Index>(i)] = 1.0;

  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  ComplexVector x(dim);
  for (Eigen::Index i = 0; i < dim; ++i) x[i] = Complex(n01(rng), n01(rng));
  x = x.cwiseProduct(mask);
  x.normalize();

  constexpr int kKrylov = 40;
  constexpr int kRestarts = 200;
  for (int restart = 0; restart < kRestarts; ++restart) {
    std::vector<ComplexVector> v{x};
    std::vector<double> alpha, beta;
    for (int j = 0; j < kKrylov; ++j) {
      ComplexVector w = sv_apply_hamiltonian(v[static_cast<std::size_t>(j)], h);
      alpha.push_back(v[static_cast<std::size_t>(j)].dot(w).real());
      for (const auto& u : v) w -= u.dot(w) * u;
      for (const auto& u : v) w -= u.dot(w) * u;
      const double b = w.norm();
      if (b < 1e-12) break;
      beta.push_back(b);
      v.push_back(w / b);
    }
    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double e = es.eigenvalues()[0];
    ComplexVector ritz = ComplexVector::Zero(dim);
    for (Eigen::Index i = 0; i < k; ++i) ritz += es.eigenvectors()(i, 0) * v[static_cast<std::size_t>(i)];
    ritz.normalize();
    const double residual = (sv_apply_hamiltonian(ritz, h) - e * ritz).norm();
    if (residual <= 1e-8) return e;
    x = ritz;
  }
  throw NumericalError("Lanczos did not reach a residual of 1e-8");
}

}  // namespace

double exact_ground_energy(const QubitHamiltonian& h, std::optional<std::size_t> particles) {
  check_size(h.n_qubits, 24, "exact_ground_energy");
  if (particles && *particles > h.n_qubits) throw InvalidInput("particle number exceeds qubit count");
  const auto basis = sector_basis(h.n_qubits, particles);
  if (static_cast<Eigen::Index>(basis.size()) <= kDenseSectorLimit) return dense_ground(h, basis);
  return lanczos_ground(h, basis);
}

ComplexMatrix fock_matrix(const FermionOperator& op) {
  const auto n = op.n_modes;
  check_size(n, kMaxDenseMatrixQubits, "fock_matrix");
  const Index dim = Index{1} << n;
  ComplexMatrix out = op.constant * ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : op.terms) {
    for (Index col = 0; col < dim; ++col) {
      Index state = col;
      double sign = 1.0;
      bool alive = true;
      for (auto it = t.ops.rbegin(); it != t.ops.rend() && alive; ++it) {
        if (it->mode >= n) throw InvalidInput("ladder operator mode exceeds n_modes");
        const Index b = bit_of(n, it->mode);
        const bool occupied = state & b;
        if (occupied == it->creation) {
          alive = false;
          break;
        }
        // modes 0..p-1 sit in the bits above b
        const Index before = state & ~((b << 1) - 1);
        if (std::popcount(before) % 2) sign = -sign;
        state ^= b;
      }
      if (alive) out(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(col)) += t.coefficient * sign;
    }
  }
  return out;
}

}  // namespace dmps
