// Copyright 2026 The fpdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPDYN_GENERATORS_H_
#define FPDYN_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "fpdyn/game.h"

namespace fpdyn {

enum class Family {
  kMatchingPennies,
  kIdentity,
  kRps,
  kRandomUnit,
  kAssumption41Random,
  kRandomInterior2x2,
};

const char* FamilyName(Family f);
std::optional<Family> ParseFamily(const std::string& name);

struct GameSpec {
  Family family = Family::kMatchingPennies;
  int n = 2;            // dimension (columns for random_unit)
  int rows = 0;         // random_unit rows; 0 means square
  double scale = 1.0;   // rps only
  std::uint64_t seed = 0;

  std::string ToString() const;
};

// matching_pennies: [[1, -1], [-1, 1]]
// identity(n):      I_n
// rps(n, s):        A_ij = -s if j = i + 1 (mod n), s if j = i - 1 (mod n)
// random_unit:      i.i.d. uniform [0, 1] entries
// assumption41_random: a, d ~ U[1, 2], c ~ U[-2, -0.1], b = a d / c
// random_interior_2x2: U[-1, 1] entries, redrawn until the equilibrium is
//                   unique and interior
GameMatrix Make(const GameSpec& spec);

// v ~ U[0, 1]^n normalized to sum 1.
MixedStrategy RandomSimplex(int n, std::uint64_t seed);

}  // namespace fpdyn

#endif  // FPDYN_GENERATORS_H_
