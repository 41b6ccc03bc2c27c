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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmps/mps.hpp"
#include "dmps/types.hpp"

namespace dmps {

enum class GateKind { H, X, Y, Z, S, Sdg, Rx, Ry, Rz, CNOT, CZ, SWAP, Generic1q, Generic2q };

std::string_view gate_name(GateKind k);

/// One gate of a circuit.
///
/// Rotations are R_P(t) = exp(-i t P / 2). A rotation either reads its angle
/// from a parameter slot, as `scale * params[slot]`, or carries a frozen
/// `fixed_angle`. For two-qubit gates qubits[0] is the control (CNOT) or the
/// most significant index of `matrix` (generic).
struct Gate {
  GateKind kind = GateKind::H;
  std::array<std::size_t, 2> qubits{0, 0};
  std::optional<std::size_t> param_slot;
  double scale = 1.0;
  std::optional<double> fixed_angle;
  ComplexMatrix matrix;  // generic kinds only

  std::size_t arity() const;
  bool is_rotation() const { return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz; }
  bool is_parametric() const { return param_slot.has_value(); }
  double angle(std::span<const double> params) const;
};

namespace gates {
Gate h(std::size_t q);
Gate x(std::size_t q);
Gate y(std::size_t q);
Gate z(std::size_t q);
Gate s(std::size_t q);
Gate sdg(std::size_t q);
Gate rotation(GateKind kind, std::size_t q, std::size_t slot, double scale = 1.0);
Gate fixed_rotation(GateKind kind, std::size_t q, double angle);
Gate rx(std::size_t q, std::size_t slot, double scale = 1.0);
Gate ry(std::size_t q, std::size_t slot, double scale = 1.0);
Gate rz(std::size_t q, std::size_t slot, double scale = 1.0);
Gate cnot(std::size_t control, std::size_t target);
Gate cz(std::size_t a, std::size_t b);
Gate swap(std::size_t a, std::size_t b);
Gate generic1(std::size_t q, ComplexMatrix m);
Gate generic2(std::size_t a, std::size_t b, ComplexMatrix m);
}  // namespace gates

struct ParametricCircuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;
  std::size_t n_slots = 0;

  /// Number of gates bound to a parameter slot.
  std::size_t n_parametric_gates() const;
  /// Throws InvalidInput unless qubits are in range, two-qubit gates act on
  /// distinct qubits, slots are < n_slots and every slot is used.
  void validate() const;
};

/// Matrix of `g` at the given parameters (2x2 or 4x4, qubits[0] most
/// significant).
ComplexMatrix gate_matrix(const Gate& g, std::span<const double> params);

/// dU/dp for the parameter feeding a parametric rotation:
/// scale * (-i P / 2) * R_P(angle).
ComplexMatrix gate_derivative(const Gate& g, std::span<const double> params);

Gate inverse_gate(const Gate& g);

/// Gates reversed and inverted; slots are shared with the input.
ParametricCircuit inverse_circuit(const ParametricCircuit& c);

/// Rewrites every long-range two-qubit gate as a SWAP chain that brings its
/// qubits together, the gate, and the mirrored chain.
ParametricCircuit route_to_nearest_neighbor(const ParametricCircuit& c);

/// Multiplies runs of non-parametric single-qubit gates on the same qubit
/// into one generic gate.
ParametricCircuit fuse_single_qubit_gates(const ParametricCircuit& c);

struct TruncationReport {
  std::vector<double> per_gate;
  double total = 0.0;
  double max = 0.0;

  void add(double w);
};

/// Applies one gate; two-qubit gates must act on neighbouring qubits.
/// Returns the discarded weight.
double apply_gate(Mps& state, const Gate& g, std::span<const double> params);

TruncationReport apply_circuit(Mps& state, const ParametricCircuit& c, std::span<const double> params);

/// Text form, one gate per line: `H 0`, `CNOT 0 1`, `RZ 3 slot=7 scale=-0.5`,
/// `RX 2 angle=1.5707963267948966`, `U1 q <8 reals>`, `U2 a b <32 reals>`
/// (row-major re/im pairs). `# qubits: N` and `# slots: M` comments fix the
/// sizes, which are otherwise inferred.
ParametricCircuit parse_circuit_text(std::string_view text);
std::string serialize_circuit_text(const ParametricCircuit& c);

}  // namespace dmps
