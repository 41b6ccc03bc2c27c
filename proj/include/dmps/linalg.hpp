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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "dmps/errors.hpp"

namespace dmps {

/// Thin SVD of a matrix, truncated to a bond budget.
///
/// `u` has orthonormal columns, `vh` has orthonormal rows and `s` is sorted in
/// descending order, so `u * s.asDiagonal() * vh` approximates the input with
/// relative squared Frobenius error `discarded_weight`.
template <typename Scalar>
struct TruncatedSvd {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using RealVector = Eigen::Matrix<RealScalar, Eigen::Dynamic, 1>;

  Matrix u;
  RealVector s;
  Matrix vh;
  RealScalar discarded_weight = 0;

  Eigen::Index rank() const { return s.size(); }

  Matrix reconstruct() const { return u * s.asDiagonal() * vh; }
};

/// Number of singular values kept from a descending spectrum.
///
/// Values with `s_i < eps * ||s||_2` are dropped, the remainder is capped at
/// `d_max`, and at least one value always survives. Ties at the cut keep the
/// earlier entries, so for degenerate spectra the retained subspace depends
/// on the basis the SVD happened to return.
template <typename Derived>
Eigen::Index kept_rank(const Eigen::MatrixBase<Derived>& s, std::size_t d_max, double eps) {
  const Eigen::Index n = s.size();
  if (n == 0) return 0;
  const auto threshold = eps * s.norm();
  Eigen::Index keep = 0;
  while (keep < n && s[keep] >= threshold) ++keep;
  keep = std::min<Eigen::Index>(keep, static_cast<Eigen::Index>(d_max));
  return std::max<Eigen::Index>(keep, 1);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Truncated singular value decomposition with discarded-weight accounting.
///
/// Both cutoffs act together: rank = min(d_max, #{s_i >= eps * ||s||_2}),
/// never less than one.
template <typename Derived>
TruncatedSvd<typename Derived::Scalar> truncated_svd(const Eigen::MatrixBase<Derived>& m,
                                                     std::size_t d_max, double eps) {
  using Scalar = typename Derived::Scalar;
  using Result = TruncatedSvd<Scalar>;
  using Matrix = typename Result::Matrix;

  if (d_max < 1) throw InvalidInput("truncated_svd: d_max must be at least 1");
  if (!(eps >= 0)) throw InvalidInput("truncated_svd: eps must be non-negative");
  if (m.rows() == 0 || m.cols() == 0) throw InvalidInput("truncated_svd: empty matrix");
  if (!all_finite(m)) throw InvalidInput("truncated_svd: input contains NaN or Inf");

  // Entries far below the matrix norm underflow inside the Jacobi rotations
  // and spoil orthonormality; they are flushed to zero first.
  Matrix dense = m;
  {
    const auto floor = dense.norm() * 1e-30;
    dense = dense.unaryExpr([floor](Scalar x) { return std::abs(x) < floor ? Scalar(0) : x; });
  }
  const auto fail = [&] {
    return NumericalError("truncated_svd: SVD failed to converge for a " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " matrix");
  };
  // Divide and conquer can report success with NaN or inaccurate factors on
  // some inputs with clustered spectra, and one-sided Jacobi can lose
  // orthonormality on inputs with tiny entries while its adjoint does not.
  // A factorization is accepted only if it reconstructs its input and both
  // factors are orthonormal. The candidates are tried in turn: divide and
  // conquer, Jacobi, Jacobi of the adjoint.
  using Real = typename Result::RealScalar;
  const Real size = static_cast<Real>(std::max(dense.rows(), dense.cols()));
  const Real tol = Real(100) * size * Eigen::NumTraits<Real>::epsilon();
  const Real scale = dense.norm();
  const auto trusted = [&](const auto& svd, const Matrix& target) {
    if (svd.info() != Eigen::Success) return false;
    const auto& su = svd.matrixU();
    const auto& sv = svd.matrixV();
    const auto& ss = svd.singularValues();
    if (!su.allFinite() || !sv.allFinite() || !ss.allFinite()) return false;
    for (Eigen::Index i = 1; i < ss.size(); ++i) {
      if (ss[i] > ss[i - 1]) return false;
    }
    const Eigen::Index k = ss.size();
    const Matrix eye = Matrix::Identity(k, k);
    if ((su.adjoint() * su - eye).norm() > tol || (sv.adjoint() * sv - eye).norm() > tol) return false;
    return (su * ss.asDiagonal() * sv.adjoint() - target).norm() <= tol * scale;
  };

  Matrix u, v;
  typename Result::RealVector s;
  constexpr auto thin = Eigen::ComputeThinU | Eigen::ComputeThinV;
  if (Eigen::BDCSVD<Matrix> bdc(dense, thin); trusted(bdc, dense)) {
    u = bdc.matrixU();
    v = bdc.matrixV();
    s = bdc.singularValues();
  } else if (Eigen::JacobiSVD<Matrix> jac(dense, thin); trusted(jac, dense)) {
    u = jac.matrixU();
    v = jac.matrixV();
    s = jac.singularValues();
  } else {
    const Matrix adj = dense.adjoint();
    Eigen::JacobiSVD<Matrix> jad(adj, thin);
    if (!trusted(jad, adj)) throw fail();
    u = jad.matrixV();
    v = jad.matrixU();
    s = jad.singularValues();
  }

  const Eigen::Index keep = kept_rank(s, d_max, eps);

  Result out;
  out.u = u.leftCols(keep);
  out.s = s.head(keep);
  out.vh = v.leftCols(keep).adjoint();
  const auto total = s.squaredNorm();
  out.discarded_weight = total > 0 ? s.tail(s.size() - keep).squaredNorm() / total : 0;
  return out;
}

}  // namespace dmps
