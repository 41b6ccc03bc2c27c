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

#include <cstddef>
#include <string_view>
#include <vector>

#include "dmps/types.hpp"

namespace dmps {

/// One- and two-electron integrals over spatial orbitals.
///
/// `g(p, q, r, s)` is (pq|rs) in chemist notation; every entry related by the
/// eightfold permutational symmetry is stored.
struct MolecularIntegrals {
  std::size_t n_orbitals = 0;
  std::size_t n_electrons = 0;
  int ms2 = 0;
  Eigen::MatrixXd h;
  std::vector<double> eri;
  double e_core = 0.0;

  double g(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return eri[((p * n_orbitals + q) * n_orbitals + r) * n_orbitals + s];
  }
  double& g(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return eri[((p * n_orbitals + q) * n_orbitals + r) * n_orbitals + s];
  }

  /// Largest violation of h = h^T and of the eightfold symmetry of g.
  double symmetry_error() const;
};

/// Reads a Molpro-style FCIDUMP. The `&FCI ... &END` (or `/`) namelist must
/// provide NORB, NELEC and MS2. Body lines are `value i j k l` with 1-based
/// indices; `i j 0 0` is h_ij, `0 0 0 0` the core energy and `i 0 0 0`
/// (orbital energies) is ignored. Fortran `D` exponents are accepted.
MolecularIntegrals parse_fcidump(std::string_view text);

}  // namespace dmps
