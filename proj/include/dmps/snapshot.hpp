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

#include <iosfwd>

#include "dmps/mps.hpp"

namespace dmps {

/// Binary checkpoint of an MPS.
///
/// Layout (all integers uint64 little-endian, reals IEEE-754 little-endian):
///   "DMPS1" | N | d_max | eps
///   per site: left dim, right dim, then (left, physical, right) row-major
///             complex entries as (re, im) pairs
///   per bond 0..N: length, then the Schmidt values
void write_snapshot(const Mps& state, std::ostream& out);
Mps read_snapshot(std::istream& in);

}  // namespace dmps
