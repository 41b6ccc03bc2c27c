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

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "dmps/circuit.hpp"
#include "dmps/errors.hpp"

namespace dmps {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool to_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool to_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<GateKind> kind_from_name(std::string_view name) {
  std::string u(name);
  for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S, GateKind::Sdg, GateKind::Rx,
                 GateKind::Ry, GateKind::Rz, GateKind::CNOT, GateKind::CZ, GateKind::SWAP, GateKind::Generic1q,
                 GateKind::Generic2q}) {
    if (u == gate_name(k)) return k;
  }
  if (u == "CX") return GateKind::CNOT;
  return std::nullopt;
}

// Parses "# key: value" directives; returns false when the comment is not one.
bool directive(std::string_view comment, std::string_view key, std::size_t& value) {
  auto at = comment.find(key);
  if (at == std::string_view::npos) return false;
  auto rest = comment.substr(at + key.size());
  while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
  auto end = rest.find_first_of(" \t\r");
  return to_size(rest.substr(0, end), value);
}

}  // namespace

ParametricCircuit parse_circuit_text(std::string_view text) {
  ParametricCircuit c;
  std::optional<std::size_t> declared_qubits, declared_slots;
  std::size_t max_qubit = 0, max_slot = 0;
  bool any_qubit = false, any_slot = false;

  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = line.substr(hash + 1);
      std::size_t v = 0;
      if (directive(comment, "qubits:", v)) declared_qubits = v;
      if (directive(comment, "slots:", v)) declared_slots = v;
      line = line.substr(0, hash);
    }
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    const auto kind = kind_from_name(tok[0].text);
    if (!kind) throw ParseError("unknown gate '" + std::string(tok[0].text) + "'", line_no, tok[0].column);

    Gate g;
    g.kind = *kind;
    const std::size_t arity = g.arity();
    if (tok.size() < 1 + arity) throw ParseError("missing qubit index", line_no, tok[0].column);
    for (std::size_t k = 0; k < arity; ++k) {
      if (!to_size(tok[1 + k].text, g.qubits[k])) throw ParseError("bad qubit index", line_no, tok[1 + k].column);
      max_qubit = std::max(max_qubit, g.qubits[k]);
      any_qubit = true;
    }
    if (arity == 1) g.qubits[1] = g.qubits[0];
    if (arity == 2 && g.qubits[0] == g.qubits[1]) throw ParseError("two-qubit gate on one qubit", line_no, tok[2].column);
    std::size_t next = 1 + arity;

    if (g.is_rotation()) {
      for (; next < tok.size(); ++next) {
        const auto t = tok[next].text;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no, tok[next].column);
        const auto key = t.substr(0, eq), val = t.substr(eq + 1);
        const auto vcol = tok[next].column + eq + 1;
        if (key == "slot") {
          std::size_t s = 0;
          if (!to_size(val, s)) throw ParseError("bad slot", line_no, vcol);
          g.param_slot = s;
          max_slot = std::max(max_slot, s);
          any_slot = true;
        } else if (key == "scale") {
          if (!to_double(val, g.scale)) throw ParseError("bad scale", line_no, vcol);
        } else if (key == "angle") {
          double a = 0;
          if (!to_double(val, a)) throw ParseError("bad angle", line_no, vcol);
          g.fixed_angle = a;
        } else {
          throw ParseError("unknown key '" + std::string(key) + "'", line_no, tok[next].column);
        }
      }
      if (g.param_slot.has_value() == g.fixed_angle.has_value()) {
        throw ParseError("rotation needs exactly one of slot= or angle=", line_no, tok[0].column);
      }
    } else if (g.kind == GateKind::Generic1q || g.kind == GateKind::Generic2q) {
      const Eigen::Index dim = g.kind == GateKind::Generic1q ? 2 : 4;
      const std::size_t want = static_cast<std::size_t>(2 * dim * dim);
      if (tok.size() - next != want) {
        throw ParseError("expected " + std::to_string(want) + " matrix reals", line_no, tok[0].column);
      }
      g.matrix.resize(dim, dim);
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index col = 0; col < dim; ++col) {
          double re = 0, im = 0;
          if (!to_double(tok[next].text, re)) throw ParseError("bad matrix entry", line_no, tok[next].column);
          ++next;
          if (!to_double(tok[next].text, im)) throw ParseError("bad matrix entry", line_no, tok[next].column);
          ++next;
          g.matrix(r, col) = Complex(re, im);
        }
    } else if (next != tok.size()) {
      throw ParseError("unexpected token", line_no, tok[next].column);
    }
    c.gates.push_back(std::move(g));
  }

  const std::size_t inferred_qubits = any_qubit ? max_qubit + 1 : 0;
  const std::size_t inferred_slots = any_slot ? max_slot + 1 : 0;
  if (declared_qubits && *declared_qubits < inferred_qubits) {
    throw InvalidInput("declared qubit count is smaller than the largest index used");
  }
  if (declared_slots && *declared_slots < inferred_slots) {
    throw InvalidInput("declared slot count is smaller than the largest slot used");
  }
  c.n_qubits = declared_qubits.value_or(inferred_qubits);
  c.n_slots = declared_slots.value_or(inferred_slots);
  c.validate();
  return c;
}

std::string serialize_circuit_text(const ParametricCircuit& c) {
  std::ostringstream out;
  out << "# qubits: " << c.n_qubits << "\n# slots: " << c.n_slots << "\n";
  for (const auto& g : c.gates) {
    out << gate_name(g.kind) << ' ' << g.qubits[0];
    if (g.arity() == 2) out << ' ' << g.qubits[1];
    if (g.param_slot) {
      out << " slot=" << *g.param_slot;
      if (g.scale != 1.0) out << " scale=" << fmt(g.scale);
    } else if (g.fixed_angle) {
      out << " angle=" << fmt(*g.fixed_angle);
    }
    if (g.kind == GateKind::Generic1q || g.kind == GateKind::Generic2q) {
      for (Eigen::Index r = 0; r < g.matrix.rows(); ++r)
        for (Eigen::Index col = 0; col < g.matrix.cols(); ++col) {
          out << ' ' << fmt(g.matrix(r, col).real()) << ' ' << fmt(g.matrix(r, col).imag());
        }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dmps
