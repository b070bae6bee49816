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

#ifndef FPDYN_KERNELS_H_
#define FPDYN_KERNELS_H_

#include <cstddef>
#include <string_view>
#include <vector>

// Dense vector kernels used on the hot path of every stepper. Each kernel has
// a scalar reference implementation and optional SIMD variants; the variants
// are required to be bit-identical to the reference (no reassociation beyond
// the fixed four-lane order of Dot, no fused multiply-add).
namespace fpdyn {
namespace kernels {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  const char* name;
  // y[i] += s * x[i]
  void (*axpy)(double* y, double s, const double* x, std::size_t n);
  // y[i] += x[i]
  void (*add)(double* y, const double* x, std::size_t n);
  // y[i] -= x[i]
  void (*sub)(double* y, const double* x, std::size_t n);
  // out[i] = y[i] + s * x[i]
  void (*add_scaled)(double* out, const double* y, double s, const double* x,
                     std::size_t n);
  double (*max)(const double* x, std::size_t n);
  // Writes the ascending indices i with x[i] >= threshold; returns the count.
  std::size_t (*indices_at_least)(const double* x, double threshold,
                                  std::size_t n, int* out);
  // Four interleaved partial sums combined as (s0 + s1) + (s2 + s3).
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& Scalar();

// Variant for `isa`, or nullptr when the CPU or build lacks it.
const KernelTable* ForIsa(Isa isa);

std::vector<Isa> AvailableIsas();

// Selected once: FPDYN_KERNELS=scalar|avx2|neon overrides detection.
const KernelTable& Active();

// Test hook. Not thread-safe with concurrent kernel use.
void SetActive(Isa isa);

std::string_view IsaName(Isa isa);

}  // namespace kernels
}  // namespace fpdyn

#endif  // FPDYN_KERNELS_H_
