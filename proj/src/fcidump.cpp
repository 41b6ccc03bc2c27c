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

#include "dmps/fcidump.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "dmps/errors.hpp"

namespace dmps {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool parse_real(std::string_view tok, double& out) {
  std::string s(tok);
  for (auto& c : s) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  return ec == std::errc() && ptr == v.data() + v.size();
}

bool parse_int(std::string_view tok, long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && !tok.empty();
}

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t pos = 0, n = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    out.push_back({text.substr(pos, eol - pos), ++n});
    pos = eol + 1;
  }
  return out;
}

struct Field {
  std::string_view text;
  std::size_t column;
};

std::vector<Field> fields(std::string_view line) {
  std::vector<Field> out;
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

}  // namespace

double MolecularIntegrals::symmetry_error() const {
  const auto n = n_orbitals;
  double err = n ? (h - h.transpose()).cwiseAbs().maxCoeff() : 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          const double v = g(p, q, r, s);
          for (double w : {g(q, p, r, s), g(p, q, s, r), g(r, s, p, q)}) err = std::max(err, std::abs(v - w));
        }
  return err;
}

MolecularIntegrals parse_fcidump(std::string_view text) {
  const auto lines = split_lines(text);
  bool any = false;
  for (const auto& l : lines) any = any || !fields(l.text).empty();
  if (!any) throw InvalidInput("FCIDUMP is empty");

  // Namelist header: everything up to the line holding &END or '/'.
  std::size_t body = 0;
  std::string header;
  bool started = false, closed = false;
  for (; body < lines.size(); ++body) {
    const auto u = upper(lines[body].text);
    if (!started) {
      if (fields(u).empty()) continue;
      if (u.find("&FCI") == std::string::npos) {
        throw ParseError("expected '&FCI' namelist header", lines[body].number, 1);
      }
      started = true;
    }
    header += u;
    header += ' ';
    if (u.find("&END") != std::string::npos || u.find('/') != std::string::npos) {
      closed = true;
      ++body;
      break;
    }
  }
  if (!closed) throw ParseError("namelist header is not terminated by &END or '/'", lines.size(), 1);

  std::map<std::string, long> keys;
  for (const char* key : {"NORB", "NELEC", "MS2"}) {
    const std::string pat = std::string(key) + "=";
    std::size_t at = 0;
    while ((at = header.find(pat, at)) != std::string::npos) {
      // Reject matches inside longer names such as XNORB.
      if (at > 0 && std::isalnum(static_cast<unsigned char>(header[at - 1]))) {
        at += pat.size();
        continue;
      }
      auto start = header.find_first_not_of(' ', at + pat.size());
      auto stop = header.find_first_of(", \t\r", start);
      long v = 0;
      if (start == std::string::npos || !parse_int(std::string_view(header).substr(start, stop - start), v)) {
        throw ParseError(std::string("bad value for ") + key, lines[0].number, 1);
      }
      keys[key] = v;
      break;
    }
    if (!keys.count(key)) throw ParseError(std::string("header is missing ") + key, lines[0].number, 1);
  }
  if (keys["NORB"] < 0 || keys["NELEC"] < 0 || keys["NELEC"] > 2 * keys["NORB"]) {
    throw ParseError("NORB/NELEC out of range", lines[0].number, 1);
  }

  MolecularIntegrals mi;
  mi.n_orbitals = static_cast<std::size_t>(keys["NORB"]);
  mi.n_electrons = static_cast<std::size_t>(keys["NELEC"]);
  mi.ms2 = static_cast<int>(keys["MS2"]);
  const auto n = mi.n_orbitals;
  mi.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  mi.eri.assign(n * n * n * n, 0.0);
  std::vector<char> seen(n * n * n * n, 0);
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> seen_h =
      Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>::Zero(static_cast<Eigen::Index>(n),
                                                                static_cast<Eigen::Index>(n));

  auto store = [](double& slot, char& mark, double v, std::size_t line, std::size_t col) {
    if (mark && std::abs(slot - v) > 1e-10) {
      throw ParseError("value conflicts with a symmetry-equivalent entry", line, col);
    }
    slot = v;
    mark = 1;
  };

  for (; body < lines.size(); ++body) {
    const auto f = fields(lines[body].text);
    if (f.empty()) continue;
    const auto ln = lines[body].number;
    if (f.size() != 5) throw ParseError("expected 'value i j k l'", ln, f.front().column);
    double v = 0;
    if (!parse_real(f[0].text, v) || !std::isfinite(v)) throw ParseError("malformed number", ln, f[0].column);
    std::array<long, 4> idx{};
    for (int k = 0; k < 4; ++k) {
      if (!parse_int(f[k + 1].text, idx[k])) throw ParseError("malformed index", ln, f[k + 1].column);
      if (idx[k] < 0 || idx[k] > static_cast<long>(n)) {
        throw ParseError("orbital index out of range 0.." + std::to_string(n), ln, f[k + 1].column);
      }
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      mi.e_core += v;
    } else if (j == 0 && k == 0 && l == 0) {
      // orbital energy, not needed
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0) throw ParseError("incomplete one-electron index pair", ln, f[1].column);
      const auto p = static_cast<Eigen::Index>(i - 1), q = static_cast<Eigen::Index>(j - 1);
      store(mi.h(p, q), seen_h(p, q), v, ln, f[0].column);
      store(mi.h(q, p), seen_h(q, p), v, ln, f[0].column);
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0) throw ParseError("incomplete two-electron index quartet", ln, f[1].column);
      const std::size_t p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      const std::array<std::array<std::size_t, 4>, 8> perms{{{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                                                             {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}}};
      for (const auto& [a, b, c, d] : perms) {
        const auto flat = ((a * n + b) * n + c) * n + d;
        store(mi.eri[flat], seen[flat], v, ln, f[0].column);
      }
    }
  }
  return mi;
}

}  // namespace dmps
