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

#include "fpdyn/random.h"

#include <cstdint>

namespace fpdyn {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index) {
  return SplitMix64(base ^ SplitMix64(index));
}

double Rng::NextDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Uniform(double lo, double hi) {
  return lo + (hi - lo) * NextDouble();
}

int Rng::UniformIndex(int n) {
  // Lemire's multiply-shift with rejection.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  unsigned __int128 m =
      static_cast<unsigned __int128>(engine_()) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<int>(m >> 64);
}

}  // namespace fpdyn
