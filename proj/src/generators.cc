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

#include "fpdyn/generators.h"

#include <cstdio>
#include <string>
#include <vector>

#include "fpdyn/error.h"
#include "fpdyn/random.h"

namespace fpdyn {
namespace {

constexpr int kMaxDraws = 10000;

GameMatrix Assumption41Random(Rng& rng) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const double a = rng.Uniform(1.0, 2.0);
    const double d = rng.Uniform(1.0, 2.0);
    const double c = rng.Uniform(-2.0, -0.1);
    const double b = a * d / c;
    GameMatrix m(2, 2, {a, b, c, d});
    if (SatisfiesAssumption41(m)) return m;
  }
  throw Error("assumption41_random: no valid draw");
}

GameMatrix RandomInterior(Rng& rng) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<double> e(4);
    for (double& x : e) x = rng.Uniform(-1.0, 1.0);
    GameMatrix m(2, 2, e);
    try {
      Nash2x2(m);
      return m;
    } catch (const NashError&) {
    }
  }
  throw Error("random_interior_2x2: no valid draw");
}

}  // namespace

const char* FamilyName(Family f) {
  switch (f) {
    case Family::kMatchingPennies:
      return "matching_pennies";
    case Family::kIdentity:
      return "identity";
    case Family::kRps:
      return "rps";
    case Family::kRandomUnit:
      return "random_unit";
    case Family::kAssumption41Random:
      return "assumption41_random";
    case Family::kRandomInterior2x2:
      return "random_interior_2x2";
  }
  return "unknown";
}

std::optional<Family> ParseFamily(const std::string& name) {
  for (Family f : {Family::kMatchingPennies, Family::kIdentity, Family::kRps,
                   Family::kRandomUnit, Family::kAssumption41Random,
                   Family::kRandomInterior2x2}) {
    if (name == FamilyName(f)) return f;
  }
  if (name == "mp") return Family::kMatchingPennies;
  return std::nullopt;
}

std::string GameSpec::ToString() const {
  std::string s = FamilyName(family);
  switch (family) {
    case Family::kMatchingPennies:
      return s;
    case Family::kIdentity:
      return s + "(" + std::to_string(n) + ")";
    case Family::kRps: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "(%d, %.17g)", n, scale);
      return s + buf;
    }
    case Family::kRandomUnit:
      return s + "(" + std::to_string(rows > 0 ? rows : n) + "x" +
             std::to_string(n) + ", seed=" + std::to_string(seed) + ")";
    case Family::kAssumption41Random:
    case Family::kRandomInterior2x2:
      return s + "(seed=" + std::to_string(seed) + ")";
  }
  return s;
}

GameMatrix Make(const GameSpec& spec) {
  const int n = spec.n;
  switch (spec.family) {
    case Family::kMatchingPennies:
      return GameMatrix::FromRows({{1.0, -1.0}, {-1.0, 1.0}});
    case Family::kIdentity: {
      if (n < 2) throw DimensionError("identity needs n >= 2");
      std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
      for (int i = 0; i < n; ++i) e[i * n + i] = 1.0;
      return GameMatrix(n, n, std::move(e));
    }
    case Family::kRps: {
      if (n < 3) throw DimensionError("rps needs n >= 3");
      std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
      for (int i = 0; i < n; ++i) {
        e[i * n + (i + 1) % n] = -spec.scale;
        e[i * n + (i + n - 1) % n] = spec.scale;
      }
      return GameMatrix(n, n, std::move(e));
    }
    case Family::kRandomUnit: {
      const int rows = spec.rows > 0 ? spec.rows : n;
      if (n < 1 || rows < 1) throw DimensionError("random_unit needs n >= 1");
      Rng rng(spec.seed);
      std::vector<double> e(static_cast<std::size_t>(rows) * n);
      for (double& x : e) x = rng.NextDouble();
      return GameMatrix(rows, n, std::move(e));
    }
    case Family::kAssumption41Random: {
      Rng rng(spec.seed);
      return Assumption41Random(rng);
    }
    case Family::kRandomInterior2x2: {
      Rng rng(spec.seed);
      return RandomInterior(rng);
    }
  }
  throw Error("unknown game family");
}

MixedStrategy RandomSimplex(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("simplex dimension must be >= 1");
  Rng rng(seed);
  std::vector<double> v(n);
  double sum = 0.0;
  do {
    sum = 0.0;
    for (double& x : v) {
      x = rng.NextDouble();
      sum += x;
    }
  } while (sum == 0.0);
  for (double& x : v) x /= sum;
  return MixedStrategy(std::move(v));
}

}  // namespace fpdyn
