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

#include "dmps/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dmps/errors.hpp"
#include "dmps/pauli.hpp"

namespace dmps {

namespace {

const Complex kI(0, 1);

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix swap_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

Pauli rotation_axis(GateKind k) {
  switch (k) {
    case GateKind::Rx: return Pauli::X;
    case GateKind::Ry: return Pauli::Y;
    case GateKind::Rz: return Pauli::Z;
    default: throw InvalidInput("not a rotation gate");
  }
}

ComplexMatrix rotation_matrix(GateKind k, double t) {
  return std::cos(t / 2) * ComplexMatrix::Identity(2, 2) - kI * std::sin(t / 2) * pauli_matrix(rotation_axis(k));
}

Gate one(GateKind k, std::size_t q) {
  Gate g;
  g.kind = k;
  g.qubits = {q, q};
  return g;
}

Gate two(GateKind k, std::size_t a, std::size_t b) {
  Gate g;
  g.kind = k;
  g.qubits = {a, b};
  return g;
}

}  // namespace

std::string_view gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Generic1q: return "U1";
    case GateKind::Generic2q: return "U2";
  }
  return "?";
}

std::size_t Gate::arity() const {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::Generic2q: return 2;
    default: return 1;
  }
}

double Gate::angle(std::span<const double> params) const {
  if (param_slot) {
    if (*param_slot >= params.size()) throw InvalidInput("parameter slot out of range");
    return scale * params[*param_slot];
  }
  if (fixed_angle) return *fixed_angle;
  throw InvalidInput("gate has no angle");
}

namespace gates {
Gate h(std::size_t q) { return one(GateKind::H, q); }
Gate x(std::size_t q) { return one(GateKind::X, q); }
Gate y(std::size_t q) { return one(GateKind::Y, q); }
Gate z(std::size_t q) { return one(GateKind::Z, q); }
Gate s(std::size_t q) { return one(GateKind::S, q); }
Gate sdg(std::size_t q) { return one(GateKind::Sdg, q); }

Gate rotation(GateKind kind, std::size_t q, std::size_t slot, double scale) {
  rotation_axis(kind);
  Gate g = one(kind, q);
  g.param_slot = slot;
  g.scale = scale;
  return g;
}

Gate fixed_rotation(GateKind kind, std::size_t q, double angle) {
  rotation_axis(kind);
  Gate g = one(kind, q);
  g.fixed_angle = angle;
  return g;
}

Gate rx(std::size_t q, std::size_t slot, double scale) { return rotation(GateKind::Rx, q, slot, scale); }
Gate ry(std::size_t q, std::size_t slot, double scale) { return rotation(GateKind::Ry, q, slot, scale); }
Gate rz(std::size_t q, std::size_t slot, double scale) { return rotation(GateKind::Rz, q, slot, scale); }
Gate cnot(std::size_t control, std::size_t target) { return two(GateKind::CNOT, control, target); }
Gate cz(std::size_t a, std::size_t b) { return two(GateKind::CZ, a, b); }
Gate swap(std::size_t a, std::size_t b) { return two(GateKind::SWAP, a, b); }

Gate generic1(std::size_t q, ComplexMatrix m) {
  if (m.rows() != 2 || m.cols() != 2) throw InvalidInput("generic single-qubit gate needs a 2x2 matrix");
  Gate g = one(GateKind::Generic1q, q);
  g.matrix = std::move(m);
  return g;
}

Gate generic2(std::size_t a, std::size_t b, ComplexMatrix m) {
  if (m.rows() != 4 || m.cols() != 4) throw InvalidInput("generic two-qubit gate needs a 4x4 matrix");
  Gate g = two(GateKind::Generic2q, a, b);
  g.matrix = std::move(m);
  return g;
}
}  // namespace gates

std::size_t ParametricCircuit::n_parametric_gates() const {
  return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_parametric(); }));
}

void ParametricCircuit::validate() const {
  std::vector<char> used(n_slots, 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    const auto where = "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
    for (std::size_t k = 0; k < g.arity(); ++k) {
      if (g.qubits[k] >= n_qubits) throw InvalidInput(where + ": qubit index out of range");
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) throw InvalidInput(where + ": repeated qubit");
    if (g.is_parametric()) {
      if (!g.is_rotation()) throw InvalidInput(where + ": only rotations can be parametric");
      if (*g.param_slot >= n_slots) throw InvalidInput(where + ": slot out of range");
      used[*g.param_slot] = 1;
    } else if (g.is_rotation() && !g.fixed_angle) {
      throw InvalidInput(where + ": rotation without slot or angle");
    }
    if (g.kind == GateKind::Generic1q && (g.matrix.rows() != 2 || g.matrix.cols() != 2)) {
      throw InvalidInput(where + ": bad matrix shape");
    }
    if (g.kind == GateKind::Generic2q && (g.matrix.rows() != 4 || g.matrix.cols() != 4)) {
      throw InvalidInput(where + ": bad matrix shape");
    }
  }
  for (std::size_t s = 0; s < n_slots; ++s) {
    if (!used[s]) throw InvalidInput("parameter slot " + std::to_string(s) + " is not used by any gate");
  }
}

ComplexMatrix gate_matrix(const Gate& g, std::span<const double> params) {
  const double r = 1 / std::numbers::sqrt2;
  switch (g.kind) {
    case GateKind::H: return mat2(r, r, r, -r);
    case GateKind::X: return pauli_matrix(Pauli::X);
    case GateKind::Y: return pauli_matrix(Pauli::Y);
    case GateKind::Z: return pauli_matrix(Pauli::Z);
    case GateKind::S: return mat2(1, 0, 0, kI);
    case GateKind::Sdg: return mat2(1, 0, 0, -kI);
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz: return rotation_matrix(g.kind, g.angle(params));
    case GateKind::CNOT: {
      ComplexMatrix m = ComplexMatrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    }
    case GateKind::CZ: {
      ComplexMatrix m = ComplexMatrix::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    }
    case GateKind::SWAP: return swap_matrix();
    case GateKind::Generic1q:
    case GateKind::Generic2q: return g.matrix;
  }
  throw InvalidInput("unknown gate kind");
}

ComplexMatrix gate_derivative(const Gate& g, std::span<const double> params) {
  if (!g.is_parametric()) throw InvalidInput("gate_derivative: gate is not parametric");
  const Pauli p = rotation_axis(g.kind);
  return g.scale * (-0.5 * kI) * pauli_matrix(p) * rotation_matrix(g.kind, g.angle(params));
}

Gate inverse_gate(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::S: out.kind = GateKind::Sdg; break;
    case GateKind::Sdg: out.kind = GateKind::S; break;
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
      if (g.param_slot) out.scale = -g.scale;
      if (g.fixed_angle) out.fixed_angle = -*g.fixed_angle;
      break;
    case GateKind::Generic1q:
    case GateKind::Generic2q: out.matrix = g.matrix.adjoint(); break;
    default: break;
  }
  return out;
}

ParametricCircuit inverse_circuit(const ParametricCircuit& c) {
  ParametricCircuit out;
  out.n_qubits = c.n_qubits;
  out.n_slots = c.n_slots;
  out.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(inverse_gate(*it));
  return out;
}

ParametricCircuit route_to_nearest_neighbor(const ParametricCircuit& c) {
  ParametricCircuit out;
  out.n_qubits = c.n_qubits;
  out.n_slots = c.n_slots;
  for (const auto& g : c.gates) {
    if (g.arity() != 2) {
      out.gates.push_back(g);
      continue;
    }
    const auto [a, b] = g.qubits;
    const auto lo = std::min(a, b), hi = std::max(a, b);
    if (hi - lo <= 1) {
      out.gates.push_back(g);
      continue;
    }
    // Walk the upper qubit down to lo + 1, apply, walk it back.
    std::vector<Gate> chain;
    for (std::size_t k = hi; k > lo + 1; --k) chain.push_back(gates::swap(k - 1, k));
    out.gates.insert(out.gates.end(), chain.begin(), chain.end());
    Gate moved = g;
    moved.qubits = a == lo ? std::array<std::size_t, 2>{lo, lo + 1} : std::array<std::size_t, 2>{lo + 1, lo};
    out.gates.push_back(std::move(moved));
    out.gates.insert(out.gates.end(), chain.rbegin(), chain.rend());
  }
  return out;
}

ParametricCircuit fuse_single_qubit_gates(const ParametricCircuit& c) {
  ParametricCircuit out;
  out.n_qubits = c.n_qubits;
  out.n_slots = c.n_slots;
  std::vector<std::vector<const Gate*>> pending(c.n_qubits);

  auto flush = [&](std::size_t q) {
    auto& run = pending.at(q);
    if (run.size() == 1) {
      out.gates.push_back(*run.front());
    } else if (run.size() > 1) {
      ComplexMatrix m = ComplexMatrix::Identity(2, 2);
      for (const Gate* g : run) m = gate_matrix(*g, {}) * m;
      out.gates.push_back(gates::generic1(q, std::move(m)));
    }
    run.clear();
  };

  for (const auto& g : c.gates) {
    if (g.arity() == 1 && !g.is_parametric()) {
      pending.at(g.qubits[0]).push_back(&g);
      continue;
    }
    for (std::size_t k = 0; k < g.arity(); ++k) flush(g.qubits[k]);
    out.gates.push_back(g);
  }
  for (std::size_t q = 0; q < c.n_qubits; ++q) flush(q);
  return out;
}

void TruncationReport::add(double w) {
  per_gate.push_back(w);
  total += w;
  max = std::max(max, w);
}

double apply_gate(Mps& state, const Gate& g, std::span<const double> params) {
  const ComplexMatrix m = gate_matrix(g, params);
  if (g.arity() == 1) {
    state.apply_1q(m, g.qubits[0]);
    return 0.0;
  }
  const auto [a, b] = g.qubits;
  if (b == a + 1) return state.apply_2q_nn(m, a);
  if (a == b + 1) {
    const ComplexMatrix sw = swap_matrix();
    return state.apply_2q_nn(sw * m * sw, b);
  }
  throw InvalidInput("two-qubit gate on qubits " + std::to_string(a) + "," + std::to_string(b) +
                     " is not nearest-neighbour; route the circuit first");
}

TruncationReport apply_circuit(Mps& state, const ParametricCircuit& c, std::span<const double> params) {
  if (params.size() != c.n_slots) {
    throw InvalidInput("expected " + std::to_string(c.n_slots) + " parameters, got " + std::to_string(params.size()));
  }
  if (state.size() != c.n_qubits) throw InvalidInput("circuit and state have different qubit counts");
  for (const auto& g : c.gates) {
    if (g.arity() == 2 && g.qubits[0] + 1 != g.qubits[1] && g.qubits[1] + 1 != g.qubits[0]) {
      throw InvalidInput("circuit has a long-range " + std::string(gate_name(g.kind)) + " gate; route it first");
    }
  }
  TruncationReport report;
  report.per_gate.reserve(c.gates.size());
  for (const auto& g : c.gates) report.add(apply_gate(state, g, params));
  return report;
}

}  // namespace dmps
