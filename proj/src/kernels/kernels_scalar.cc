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

#include <cstddef>

#include "kernels_internal.h"

namespace fpdyn {
namespace kernels {
namespace internal {
namespace {

void AxpyScalar(double* y, double s, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void AddScalar(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

void SubScalar(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= x[i];
}

void AddScaledScalar(double* out, const double* y, double s, const double* x,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + s * x[i];
}

double MaxScalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] > m) m = x[i];
  }
  return m;
}

std::size_t IndicesAtLeastScalar(const double* x, double threshold,
                                 std::size_t n, int* out) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] >= threshold) out[k++] = static_cast<int>(i);
  }
  return k;
}

double DotScalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) lane[i & 3] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

const KernelTable kScalarTable = {
    Isa::kScalar, "scalar",        &AxpyScalar,           &AddScalar,
    &SubScalar,   &AddScaledScalar, &MaxScalar, &IndicesAtLeastScalar,
    &DotScalar};

}  // namespace internal
}  // namespace kernels
}  // namespace fpdyn
