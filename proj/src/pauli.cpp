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

#include "dmps/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dmps/errors.hpp"

namespace dmps {

namespace {

// sigma_a * sigma_b = phase * sigma_c
struct PauliProduct {
  Complex phase;
  Pauli result;
};

PauliProduct multiply(Pauli a, Pauli b) {
  if (a == Pauli::I) return {1.0, b};
  if (b == Pauli::I) return {1.0, a};
  if (a == b) return {1.0, Pauli::I};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const int ic = 6 - ia - ib;  // X=1, Y=2, Z=3
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? Complex(0, 1) : Complex(0, -1), static_cast<Pauli>(ic)};
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw InvalidInput(std::string("unknown Pauli letter '") + c + "'");
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

ComplexMatrix pauli_matrix(Pauli p) {
  ComplexMatrix m(2, 2);
  const Complex i(0, 1);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliString PauliString::from_label(std::string_view label, Complex c) {
  PauliString out;
  out.coefficient = c;
  for (const auto& tok : tokenize(label)) {
    if (tok.text == "I" || tok.text == "i") continue;
    const Pauli p = pauli_from_char(tok.text.front());
    std::size_t q = 0;
    if (!parse_index(tok.text.substr(1), q)) {
      throw InvalidInput("bad Pauli token '" + std::string(tok.text) + "'");
    }
    if (!out.ops.emplace(q, p).second) {
      throw InvalidInput("qubit " + std::to_string(q) + " appears twice in '" + std::string(label) + "'");
    }
  }
  return out;
}

Pauli PauliString::at(std::size_t qubit) const {
  auto it = ops.find(qubit);
  return it == ops.end() ? Pauli::I : it->second;
}

std::string PauliString::label() const {
  if (ops.empty()) return "I";
  std::string out;
  for (const auto& [q, p] : ops) {
    if (!out.empty()) out += ' ';
    out += pauli_char(p);
    out += std::to_string(q);
  }
  return out;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  PauliString out;
  out.coefficient = a.coefficient * b.coefficient;
  out.ops = a.ops;
  for (const auto& [q, pb] : b.ops) {
    auto it = out.ops.find(q);
    if (it == out.ops.end()) {
      out.ops.emplace(q, pb);
      continue;
    }
    const auto prod = multiply(it->second, pb);
    out.coefficient *= prod.phase;
    if (prod.result == Pauli::I) {
      out.ops.erase(it);
    } else {
      it->second = prod.result;
    }
  }
  return out;
}

std::vector<PauliString> combine_like_terms(const std::vector<PauliString>& terms, double prune) {
  std::map<std::map<std::size_t, Pauli>, Complex> acc;
  for (const auto& t : terms) acc[t.ops] += t.coefficient;
  std::vector<PauliString> out;
  out.reserve(acc.size());
  for (auto& [ops, c] : acc) {
    if (std::abs(c) < prune) continue;
    out.emplace_back(c, ops);
  }
  return out;
}

QubitHamiltonian make_hamiltonian(std::size_t n_qubits, const std::vector<PauliString>& terms,
                                  double constant, double prune) {
  QubitHamiltonian h;
  h.n_qubits = n_qubits;
  h.constant = constant;
  for (auto& t : combine_like_terms(terms, prune)) {
    if (t.is_identity()) {
      if (std::abs(t.coefficient.imag()) > 1e-10) {
        throw InvalidInput("identity coefficient has an imaginary part; operator is not Hermitian");
      }
      h.constant += t.coefficient.real();
      continue;
    }
    if (t.span() > n_qubits) {
      throw InvalidInput("term " + t.label() + " exceeds " + std::to_string(n_qubits) + " qubits");
    }
    h.terms.push_back(std::move(t));
  }
  return h;
}

double max_imaginary_coefficient(const QubitHamiltonian& h) {
  double m = 0.0;
  for (const auto& t : h.terms) m = std::max(m, std::abs(t.coefficient.imag()));
  return m;
}

std::vector<QubitHamiltonian> split_groups(const QubitHamiltonian& h, std::size_t group_size) {
  if (group_size < 1) throw InvalidInput("split_groups: group_size must be at least 1");
  std::vector<QubitHamiltonian> groups;
  for (std::size_t start = 0; start < h.terms.size(); start += group_size) {
    QubitHamiltonian g;
    g.n_qubits = h.n_qubits;
    const auto stop = std::min(h.terms.size(), start + group_size);
    g.terms.assign(h.terms.begin() + static_cast<std::ptrdiff_t>(start),
                   h.terms.begin() + static_cast<std::ptrdiff_t>(stop));
    groups.push_back(std::move(g));
  }
  if (groups.empty()) {
    QubitHamiltonian g;
    g.n_qubits = h.n_qubits;
    groups.push_back(std::move(g));
  }
  groups.front().constant = h.constant;
  return groups;
}

QubitHamiltonian parse_pauli_text(std::string_view text) {
  QubitHamiltonian h;
  std::size_t declared_qubits = 0;
  bool have_declared = false;
  bool saw_any = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      auto comment = line.substr(hash + 1);
      if (auto key = comment.find("n_qubits="); key != std::string_view::npos) {
        auto value = comment.substr(key + 9);
        auto end = value.find_first_of(" \t\r");
        if (!parse_index(value.substr(0, end), declared_qubits)) {
          throw ParseError("bad n_qubits directive", line_no, hash + key + 11);
        }
        have_declared = true;
      }
      line = line.substr(0, hash);
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 3) {
      throw ParseError("expected '<re> <im> <ops...>'", line_no, tokens.front().column);
    }
    double re = 0, im = 0;
    if (!parse_double(tokens[0].text, re)) throw ParseError("bad real part", line_no, tokens[0].column);
    if (!parse_double(tokens[1].text, im)) throw ParseError("bad imaginary part", line_no, tokens[1].column);
    saw_any = true;

    PauliString term;
    term.coefficient = Complex(re, im);
    bool identity_token = false;
    for (std::size_t k = 2; k < tokens.size(); ++k) {
      const auto& tok = tokens[k];
      if (tok.text == "I") {
        identity_token = true;
        continue;
      }
      Pauli p;
      switch (tok.text.front()) {
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default: throw ParseError("expected X<q>, Y<q>, Z<q> or I", line_no, tok.column);
      }
      std::size_t q = 0;
      if (!parse_index(tok.text.substr(1), q)) throw ParseError("bad qubit index", line_no, tok.column + 1);
      if (!term.ops.emplace(q, p).second) throw ParseError("qubit repeated in string", line_no, tok.column);
    }
    if (identity_token && !term.ops.empty()) {
      throw ParseError("'I' must stand alone", line_no, tokens[2].column);
    }
    if (term.is_identity()) {
      if (im != 0.0) throw ParseError("constant term must be real", line_no, tokens[1].column);
      h.constant += re;
      continue;
    }
    h.n_qubits = std::max(h.n_qubits, term.span());
    h.terms.push_back(std::move(term));
  }
  if (!saw_any) throw InvalidInput("Pauli text contains no terms: zero Hamiltonian");
  if (have_declared) {
    if (declared_qubits < h.n_qubits) {
      throw InvalidInput("declared n_qubits=" + std::to_string(declared_qubits) +
                         " smaller than the largest qubit index used");
    }
    h.n_qubits = declared_qubits;
  }
  return h;
}

std::string serialize_pauli_text(const QubitHamiltonian& h) {
  std::ostringstream out;
  out << "# n_qubits=" << h.n_qubits << "\n";
  if (h.constant != 0.0 || h.terms.empty()) {
    out << format_double(h.constant) << ' ' << format_double(0.0) << " I\n";
  }
  for (const auto& t : h.terms) {
    out << format_double(t.coefficient.real()) << ' ' << format_double(t.coefficient.imag()) << ' '
        << t.label() << '\n';
  }
  return out.str();
}

}  // namespace dmps
