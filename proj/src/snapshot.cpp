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

#include "dmps/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "dmps/errors.hpp"

namespace dmps {

namespace {

constexpr std::array<char, 5> kMagic{'D', 'M', 'P', 'S', '1'};

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

void put_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }
void put_f64(std::ostream& out, double v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw InvalidInput("snapshot: truncated stream");
  return v;
}

double get_f64(std::istream& in) {
  double v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw InvalidInput("snapshot: truncated stream");
  return v;
}

// Guards against absurd allocations from corrupt headers.
constexpr std::uint64_t kMaxDim = 1u << 20;

}  // namespace

void write_snapshot(const Mps& state, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, state.size());
  put_u64(out, state.settings().d_max);
  put_f64(out, state.settings().eps);
  for (std::size_t n = 0; n < state.size(); ++n) {
    const auto& b = state.site(n);
    put_u64(out, static_cast<std::uint64_t>(b[0].rows()));
    put_u64(out, static_cast<std::uint64_t>(b[0].cols()));
    for (Eigen::Index l = 0; l < b[0].rows(); ++l)
      for (int i = 0; i < 2; ++i)
        for (Eigen::Index r = 0; r < b[0].cols(); ++r) {
          put_f64(out, b[i](l, r).real());
          put_f64(out, b[i](l, r).imag());
        }
  }
  for (std::size_t bond = 0; bond <= state.size(); ++bond) {
    const auto& s = state.schmidt(bond);
    put_u64(out, static_cast<std::uint64_t>(s.size()));
    for (Eigen::Index k = 0; k < s.size(); ++k) put_f64(out, s[k]);
  }
  if (!out) throw Error("snapshot: write failed");
}

Mps read_snapshot(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InvalidInput("snapshot: bad magic, expected DMPS1");
  }
  const auto n = get_u64(in);
  if (n == 0 || n > kMaxDim) throw InvalidInput("snapshot: bad qubit count");
  TruncationSettings settings;
  settings.d_max = get_u64(in);
  settings.eps = get_f64(in);

  std::vector<Mps::SiteTensor> sites(n);
  for (auto& b : sites) {
    const auto dl = get_u64(in);
    const auto dr = get_u64(in);
    if (dl == 0 || dr == 0 || dl > kMaxDim || dr > kMaxDim) throw InvalidInput("snapshot: bad bond dimension");
    b[0].resize(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(dr));
    b[1].resize(static_cast<Eigen::Index>(dl), static_cast<Eigen::Index>(dr));
    for (Eigen::Index l = 0; l < b[0].rows(); ++l)
      for (int i = 0; i < 2; ++i)
        for (Eigen::Index r = 0; r < b[0].cols(); ++r) {
          const double re = get_f64(in);
          const double im = get_f64(in);
          b[i](l, r) = Complex(re, im);
        }
  }
  std::vector<RealVector> schmidt(n + 1);
  for (auto& s : schmidt) {
    const auto len = get_u64(in);
    if (len == 0 || len > kMaxDim) throw InvalidInput("snapshot: bad Schmidt vector length");
    s.resize(static_cast<Eigen::Index>(len));
    for (Eigen::Index k = 0; k < s.size(); ++k) s[k] = get_f64(in);
  }
  return Mps::from_parts(std::move(sites), std::move(schmidt), settings);
}

}  // namespace dmps
