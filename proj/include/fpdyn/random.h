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

#ifndef FPDYN_RANDOM_H_
#define FPDYN_RANDOM_H_

#include <cstdint>
#include <random>

namespace fpdyn {

// Recorded in output metadata so runs can be replayed elsewhere.
inline constexpr const char* kRngIdentity =
    "mt19937_64; seeds split by splitmix64(base ^ splitmix64(index))";

std::uint64_t SplitMix64(std::uint64_t x);

// Seed for the index-th independent stream under `base`.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

// The distributions here are spelled out rather than taken from <random> so
// that identical seeds give identical draws on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double NextDouble();
  double Uniform(double lo, double hi);
  // Uniform on {0, ..., n - 1}; n >= 1.
  int UniformIndex(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fpdyn

#endif  // FPDYN_RANDOM_H_
