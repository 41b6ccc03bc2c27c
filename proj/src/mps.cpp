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

#include "dmps/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dmps/errors.hpp"
#include "dmps/linalg.hpp"

namespace dmps {

namespace {

// Deviation from the right-canonical condition above which the left tensor
// produced by a two-site update is repaired by an LQ sweep.
constexpr double kCanonicalRepairTol = 1e-12;

bool is_unitary(const ComplexMatrix& g, double tol = 1e-12) {
  if (g.rows() != g.cols()) return false;
  const ComplexMatrix d = g.adjoint() * g - ComplexMatrix::Identity(g.rows(), g.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

double canonical_defect(const Mps::SiteTensor& b) {
  const ComplexMatrix gram = b[0] * b[0].adjoint() + b[1] * b[1].adjoint();
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

// E' = sum_{i',i} op(i',i) bra[i']^dagger E ket[i]
ComplexMatrix transfer(const ComplexMatrix& env, const Mps::SiteTensor& bra, const Mps::SiteTensor& ket,
                       const ComplexMatrix& op) {
  ComplexMatrix out = ComplexMatrix::Zero(bra[0].cols(), ket[0].cols());
  std::array<ComplexMatrix, 2> half;
  for (int i = 0; i < 2; ++i) {
    if (op(0, i) != 0.0 || op(1, i) != 0.0) half[i] = env * ket[i];
  }
  for (int ip = 0; ip < 2; ++ip) {
    ComplexMatrix mixed;
    bool any = false;
    for (int i = 0; i < 2; ++i) {
      const Complex c = op(ip, i);
      if (c == 0.0) continue;
      if (!any) {
        mixed = c * half[i];
        any = true;
      } else {
        mixed += c * half[i];
      }
    }
    if (any) out.noalias() += bra[ip].adjoint() * mixed;
  }
  return out;
}

ComplexMatrix pauli_transfer(const ComplexMatrix& env, const Mps::SiteTensor& b, Pauli p) {
  const ComplexMatrix t0 = env * b[0];
  const ComplexMatrix t1 = env * b[1];
  const Complex i(0, 1);
  switch (p) {
    case Pauli::I: return b[0].adjoint() * t0 + b[1].adjoint() * t1;
    case Pauli::Z: return b[0].adjoint() * t0 - b[1].adjoint() * t1;
    case Pauli::X: return b[0].adjoint() * t1 + b[1].adjoint() * t0;
    case Pauli::Y: return -i * (b[0].adjoint() * t1) + i * (b[1].adjoint() * t0);
  }
  return {};
}

void check_qubits(const PauliString& p, std::size_t n) {
  if (p.span() > n) {
    throw InvalidInput("Pauli string " + p.label() + " acts beyond qubit " + std::to_string(n - 1));
  }
}

}  // namespace

Mps Mps::product_state(std::span<const int> bits, TruncationSettings settings) {
  if (bits.empty()) throw InvalidInput("product_state: empty bit list");
  if (settings.d_max < 1) throw InvalidInput("product_state: d_max must be at least 1");
  Mps m;
  m.settings_ = settings;
  m.sites_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw InvalidInput("product_state: bits must be 0 or 1");
    SiteTensor t{ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1)};
    t[b](0, 0) = 1.0;
    m.sites_.push_back(std::move(t));
  }
  m.schmidt_.assign(bits.size() + 1, RealVector::Ones(1));
  return m;
}

Mps Mps::from_parts(std::vector<SiteTensor> sites, std::vector<RealVector> schmidt,
                    TruncationSettings settings) {
  if (sites.empty()) throw InvalidInput("Mps: no sites");
  if (schmidt.size() != sites.size() + 1) throw InvalidInput("Mps: need N+1 Schmidt vectors");
  for (std::size_t n = 0; n < sites.size(); ++n) {
    const auto& s = sites[n];
    if (s[0].rows() != s[1].rows() || s[0].cols() != s[1].cols()) {
      throw InvalidInput("Mps: site " + std::to_string(n) + " has mismatched physical slices");
    }
    if (schmidt[n].size() != s[0].rows()) {
      throw InvalidInput("Mps: Schmidt vector " + std::to_string(n) + " does not match bond dimension");
    }
    if (n + 1 < sites.size() && s[0].cols() != sites[n + 1][0].rows()) {
      throw InvalidInput("Mps: bond " + std::to_string(n + 1) + " dimension mismatch");
    }
  }
  if (sites.front()[0].rows() != 1 || sites.back()[0].cols() != 1) {
    throw InvalidInput("Mps: boundary bonds must have dimension 1");
  }
  if (schmidt.back().size() != 1) throw InvalidInput("Mps: last Schmidt vector must be a singleton");
  Mps m;
  m.sites_ = std::move(sites);
  m.schmidt_ = std::move(schmidt);
  m.settings_ = settings;
  return m;
}

std::size_t Mps::bond_dimension(std::size_t bond) const {
  if (bond > size()) throw InvalidInput("bond index out of range");
  return static_cast<std::size_t>(schmidt_[bond].size());
}

std::size_t Mps::max_bond_dimension() const {
  std::size_t d = 1;
  for (const auto& s : schmidt_) d = std::max<std::size_t>(d, static_cast<std::size_t>(s.size()));
  return d;
}

void Mps::apply_1q(const ComplexMatrix& gate, std::size_t site) {
  if (site >= size()) throw InvalidInput("apply_1q: site " + std::to_string(site) + " out of range");
  if (gate.rows() != 2 || gate.cols() != 2) throw InvalidInput("apply_1q: gate must be 2x2");
  if (validate_gates_ && !is_unitary(gate)) throw InvalidInput("apply_1q: gate is not unitary");
  auto& b = sites_[site];
  ComplexMatrix b0 = gate(0, 0) * b[0] + gate(0, 1) * b[1];
  ComplexMatrix b1 = gate(1, 0) * b[0] + gate(1, 1) * b[1];
  b[0] = std::move(b0);
  b[1] = std::move(b1);
}

double Mps::apply_2q_nn(const ComplexMatrix& gate, std::size_t left_site) {
  if (left_site + 1 >= size()) {
    throw InvalidInput("apply_2q_nn: left site " + std::to_string(left_site) + " out of range");
  }
  if (gate.rows() != 4 || gate.cols() != 4) throw InvalidInput("apply_2q_nn: gate must be 4x4");
  if (validate_gates_ && !is_unitary(gate)) throw InvalidInput("apply_2q_nn: gate is not unitary");

  auto& left = sites_[left_site];
  auto& right = sites_[left_site + 1];
  const Eigen::Index dl = left[0].rows();
  const Eigen::Index dr = right[0].cols();

  // Two-site tensor with the gate applied, laid out as a 2Dl x 2Dr block
  // matrix whose (i', j') block is C^{i' j'}.
  std::array<std::array<ComplexMatrix, 2>, 2> theta;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) theta[i][j] = left[i] * right[j];

  ComplexMatrix c = ComplexMatrix::Zero(2 * dl, 2 * dr);
  for (int ip = 0; ip < 2; ++ip) {
    for (int jp = 0; jp < 2; ++jp) {
      auto block = c.block(ip * dl, jp * dr, dl, dr);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const Complex q = gate(2 * ip + jp, 2 * i + j);
          if (q != 0.0) block += q * theta[i][j];
        }
    }
  }

  const RealVector& lambda = schmidt_[left_site];
  ComplexMatrix weighted = c;
  for (int ip = 0; ip < 2; ++ip) {
    weighted.middleRows(ip * dl, dl) = lambda.asDiagonal() * c.middleRows(ip * dl, dl);
  }

  const auto svd = truncated_svd(weighted, settings_.d_max, settings_.eps);
  const ComplexMatrix new_left = c * svd.vh.adjoint();
  const double kept_norm = std::sqrt(std::max(0.0, 1.0 - svd.discarded_weight));
  for (int i = 0; i < 2; ++i) {
    right[i] = svd.vh.middleCols(i * dr, dr);
    left[i] = new_left.middleRows(i * dl, dl);
    if (svd.discarded_weight > 0) left[i] /= kept_norm;
  }
  schmidt_[left_site + 1] = svd.s / svd.s.norm();

  last_renormalization_ = kept_norm;
  if (canonical_defect(left) > kCanonicalRepairTol) restore_right_canonical(left_site);
  return svd.discarded_weight;
}

void Mps::restore_right_canonical(std::size_t from_site) {
  // Sites 0..from_site-1 become left-canonical, which makes from_site the
  // orthogonality center; SVDs walking back to site 0 then leave every
  // touched site right-canonical with its exact Schmidt vector.
  for (std::size_t m = 0; m < from_site; ++m) {
    auto& b = sites_[m];
    const Eigen::Index dl = b[0].rows();
    const Eigen::Index dr = b[0].cols();
    ComplexMatrix col(2 * dl, dr);
    col << b[0], b[1];
    Eigen::HouseholderQR<ComplexMatrix> qr(col);
    const Eigen::Index k = std::min(2 * dl, dr);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(2 * dl, k);
    const ComplexMatrix r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    b[0] = q.topRows(dl);
    b[1] = q.bottomRows(dl);
    auto& next = sites_[m + 1];
    next[0] = r * next[0];
    next[1] = r * next[1];
  }
  for (std::size_t m = from_site; m > 0; --m) {
    auto& b = sites_[m];
    const Eigen::Index dl = b[0].rows();
    const Eigen::Index dr = b[0].cols();
    ComplexMatrix row(dl, 2 * dr);
    row << b[0], b[1];
    const auto svd = truncated_svd(row, static_cast<std::size_t>(std::max(dl, 2 * dr)), 0.0);
    b[0] = svd.vh.leftCols(dr);
    b[1] = svd.vh.rightCols(dr);
    const double norm = svd.s.norm();
    if (!(norm > 0)) throw DegenerateState("restore_right_canonical: state norm vanished");
    schmidt_[m] = svd.s / norm;
    const ComplexMatrix us = svd.u * svd.s.asDiagonal();
    auto& prev = sites_[m - 1];
    prev[0] = prev[0] * us;
    prev[1] = prev[1] * us;
  }
  auto& first = sites_[0];
  const double norm = std::sqrt(first[0].squaredNorm() + first[1].squaredNorm());
  if (!(norm > 0)) throw DegenerateState("restore_right_canonical: state norm vanished");
  first[0] /= norm;
  first[1] /= norm;
  last_renormalization_ *= norm;
}

double Mps::right_canonical_error() const {
  double err = 0.0;
  for (const auto& s : sites_) err = std::max(err, canonical_defect(s));
  return err;
}

Complex expectation(const Mps& state, const PauliString& p) {
  check_qubits(p, state.size());
  ComplexMatrix env = ComplexMatrix::Ones(1, 1);
  for (std::size_t n = 0; n < p.span(); ++n) env = pauli_transfer(env, state.site(n), p.at(n));
  return p.coefficient * env.trace();
}

namespace {

struct TrieWalker {
  const Mps& state;
  std::span<const PauliString> terms;
  const std::vector<std::size_t>& order;
  std::vector<Complex>& values;

  void walk(std::size_t depth, std::size_t lo, std::size_t hi, const ComplexMatrix& env) {
    while (lo < hi && terms[order[lo]].span() <= depth) {
      values[order[lo]] = terms[order[lo]].coefficient * env.trace();
      ++lo;
    }
    while (lo < hi) {
      const Pauli p = terms[order[lo]].at(depth);
      std::size_t mid = lo;
      while (mid < hi && terms[order[mid]].at(depth) == p) ++mid;
      walk(depth + 1, lo, mid, pauli_transfer(env, state.site(depth), p));
      lo = mid;
    }
  }
};

}  // namespace

std::vector<Complex> expectation_terms(const Mps& state, std::span<const PauliString> terms) {
  for (const auto& t : terms) check_qubits(t, state.size());
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n = state.size();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t q = 0; q < n; ++q) {
      const auto pa = terms[a].at(q);
      const auto pb = terms[b].at(q);
      if (pa != pb) return pa < pb;
    }
    return false;
  });
  // With identities sorting first, strings that end early lead their group.
  std::vector<Complex> values(terms.size());
  TrieWalker walker{state, terms, order, values};
  walker.walk(0, 0, order.size(), ComplexMatrix::Ones(1, 1));
  return values;
}

double energy(const Mps& state, const QubitHamiltonian& h) {
  if (h.n_qubits > state.size()) throw InvalidInput("energy: Hamiltonian wider than the state");
  const auto values = expectation_terms(state, h.terms);
  double e = h.constant;
  for (const auto& v : values) e += v.real();
  return e;
}

WeightedMps apply_pauli_string(const Mps& state, const PauliString& p) {
  check_qubits(p, state.size());
  Mps out = state;
  for (const auto& [q, op] : p.ops) out.apply_1q(pauli_matrix(op), q);
  return {p.coefficient, std::move(out)};
}

double CompressedSum::norm() const { return std::exp(log_norm); }

CompressedSum add_and_compress(std::span<const WeightedMps> terms, TruncationSettings settings) {
  if (terms.empty()) throw InvalidInput("add_and_compress: no terms");
  const std::size_t n = terms.front().state.size();
  double weight_sum = 0.0;
  for (const auto& t : terms) {
    if (t.state.size() != n) throw InvalidInput("add_and_compress: states have different qubit counts");
    weight_sum += std::abs(t.weight);
  }

  // Bond-wise direct sum.
  std::vector<Mps::SiteTensor> sites(n);
  if (n == 1) {
    for (int i = 0; i < 2; ++i) {
      sites[0][i] = ComplexMatrix::Zero(1, 1);
      for (const auto& t : terms) sites[0][i] += t.weight * t.state.site(0)[i];
    }
  } else {
    for (std::size_t s = 0; s < n; ++s) {
      Eigen::Index rows = 0, cols = 0;
      for (const auto& t : terms) {
        rows += t.state.site(s)[0].rows();
        cols += t.state.site(s)[0].cols();
      }
      if (s == 0) rows = 1;
      if (s + 1 == n) cols = 1;
      for (int i = 0; i < 2; ++i) {
        ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
        Eigen::Index r0 = 0, c0 = 0;
        for (const auto& t : terms) {
          const auto& b = t.state.site(s)[i];
          const Eigen::Index r = s == 0 ? 0 : r0;
          const Eigen::Index c = s + 1 == n ? 0 : c0;
          if (s == 0) {
            m.block(r, c, b.rows(), b.cols()) = t.weight * b;
          } else {
            m.block(r, c, b.rows(), b.cols()) = b;
          }
          r0 += b.rows();
          c0 += b.cols();
        }
        sites[s][i] = std::move(m);
      }
    }
  }

  // Left-to-right QR sweep: sites 0..n-2 become left-canonical.
  for (std::size_t s = 0; s + 1 < n; ++s) {
    auto& b = sites[s];
    const Eigen::Index dl = b[0].rows();
    const Eigen::Index dr = b[0].cols();
    ComplexMatrix col(2 * dl, dr);
    col << b[0], b[1];
    Eigen::HouseholderQR<ComplexMatrix> qr(col);
    const Eigen::Index k = std::min(2 * dl, dr);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(2 * dl, k);
    const ComplexMatrix r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    b[0] = q.topRows(dl);
    b[1] = q.bottomRows(dl);
    auto& next = sites[s + 1];
    next[0] = r * next[0];
    next[1] = r * next[1];
  }

  {
    const auto& last = sites[n - 1];
    const double total = std::sqrt(last[0].squaredNorm() + last[1].squaredNorm());
    if (!(total > 1e-14 * weight_sum)) {
      throw DegenerateState("add_and_compress: the weighted sum is the zero vector");
    }
  }

  // Right-to-left truncated SVD sweep; each cut sees a left-canonical left
  // block and right-canonical right block, so s is the true Schmidt spectrum.
  std::vector<RealVector> schmidt(n + 1, RealVector::Ones(1));
  double discarded = 0.0;
  for (std::size_t s = n - 1; s > 0; --s) {
    auto& b = sites[s];
    const Eigen::Index dl = b[0].rows();
    const Eigen::Index dr = b[0].cols();
    ComplexMatrix row(dl, 2 * dr);
    row << b[0], b[1];
    const auto svd = truncated_svd(row, settings.d_max, settings.eps);
    discarded += svd.discarded_weight;
    b[0] = svd.vh.leftCols(dr);
    b[1] = svd.vh.rightCols(dr);
    schmidt[s] = svd.s / svd.s.norm();
    const ComplexMatrix us = svd.u * svd.s.asDiagonal();
    auto& prev = sites[s - 1];
    prev[0] = prev[0] * us;
    prev[1] = prev[1] * us;
  }
  auto& first = sites[0];
  const double norm = std::sqrt(first[0].squaredNorm() + first[1].squaredNorm());
  if (!(norm > 0)) throw DegenerateState("add_and_compress: compressed sum vanished");
  first[0] /= norm;
  first[1] /= norm;

  return {Mps::from_parts(std::move(sites), std::move(schmidt), settings), std::log(norm), discarded};
}

Complex inner(const Mps& bra, const Mps& ket) {
  if (bra.size() != ket.size()) throw InvalidInput("inner: states have different qubit counts");
  ComplexMatrix env = ComplexMatrix::Ones(1, 1);
  for (std::size_t n = 0; n < bra.size(); ++n) {
    const auto& b = bra.site(n);
    const auto& k = ket.site(n);
    env = b[0].adjoint() * (env * k[0]) + b[1].adjoint() * (env * k[1]);
  }
  return env(0, 0);
}

Complex inner(const Mps& bra, const Mps& ket, const ComplexMatrix& op, std::size_t site) {
  if (bra.size() != ket.size()) throw InvalidInput("inner: states have different qubit counts");
  if (site >= bra.size()) throw InvalidInput("inner: operator site out of range");
  if (op.rows() != 2 || op.cols() != 2) throw InvalidInput("inner: operator must be 2x2");
  ComplexMatrix env = ComplexMatrix::Ones(1, 1);
  for (std::size_t n = 0; n < bra.size(); ++n) {
    const auto& b = bra.site(n);
    const auto& k = ket.site(n);
    if (n == site) {
      env = transfer(env, b, k, op);
    } else {
      env = b[0].adjoint() * (env * k[0]) + b[1].adjoint() * (env * k[1]);
    }
  }
  return env(0, 0);
}

ComplexVector to_statevector(const Mps& state) {
  if (state.size() > kMaxDenseQubits) {
    throw ResourceError("to_statevector: " + std::to_string(state.size()) + " qubits exceeds the " +
                        std::to_string(kMaxDenseQubits) + "-qubit limit");
  }
  ComplexMatrix cur = ComplexMatrix::Ones(1, 1);
  for (std::size_t n = 0; n < state.size(); ++n) {
    const auto& b = state.site(n);
    ComplexMatrix next(cur.rows() * 2, b[0].cols());
    for (Eigen::Index r = 0; r < cur.rows(); ++r) {
      next.row(2 * r) = cur.row(r) * b[0];
      next.row(2 * r + 1) = cur.row(r) * b[1];
    }
    cur = std::move(next);
  }
  return cur.col(0);
}

}  // namespace dmps
