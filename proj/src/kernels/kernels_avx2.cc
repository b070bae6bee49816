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

#if defined(__x86_64__) || defined(_M_X64)
#define FPDYN_HAVE_X86 1
#include <immintrin.h>
#endif

namespace fpdyn {
namespace kernels {
namespace internal {

#if FPDYN_HAVE_X86
namespace {

#define FPDYN_AVX2 __attribute__((target("avx2")))

FPDYN_AVX2 void AxpyAvx2(double* y, double s, const double* x,
                         std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += s * x[i];
}

FPDYN_AVX2 void AddAvx2(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] += x[i];
}

FPDYN_AVX2 void SubAvx2(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] -= x[i];
}

FPDYN_AVX2 void AddScaledAvx2(double* out, const double* y, double s,
                              const double* x, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) out[i] = y[i] + s * x[i];
}

FPDYN_AVX2 double MaxAvx2(const double* x, std::size_t n) {
  if (n < 4) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) {
      if (x[i] > m) m = x[i];
    }
    return m;
  }
  __m256d acc = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double m = lane[0];
  for (int k = 1; k < 4; ++k) {
    if (lane[k] > m) m = lane[k];
  }
  for (; i < n; ++i) {
    if (x[i] > m) m = x[i];
  }
  return m;
}

FPDYN_AVX2 std::size_t IndicesAtLeastAvx2(const double* x, double threshold,
                                          std::size_t n, int* out) {
  const __m256d vt = _mm256_set1_pd(threshold);
  std::size_t k = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    int mask = _mm256_movemask_pd(
        _mm256_cmp_pd(_mm256_loadu_pd(x + i), vt, _CMP_GE_OQ));
    while (mask != 0) {
      int bit = __builtin_ctz(static_cast<unsigned>(mask));
      out[k++] = static_cast<int>(i) + bit;
      mask &= mask - 1;
    }
  }
  for (; i < n; ++i) {
    if (x[i] >= threshold) out[k++] = static_cast<int>(i);
  }
  return k;
}

FPDYN_AVX2 double DotAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, prod);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; i < n; ++i) lane[i & 3] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

#undef FPDYN_AVX2

const KernelTable kAvx2Table = {
    Isa::kAvx2, "avx2",         &AxpyAvx2, &AddAvx2,           &SubAvx2,
    &AddScaledAvx2, &MaxAvx2, &IndicesAtLeastAvx2, &DotAvx2};

}  // namespace

const KernelTable* Avx2Table() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") ? &kAvx2Table : nullptr;
}

#else

const KernelTable* Avx2Table() { return nullptr; }

#endif

}  // namespace internal
}  // namespace kernels
}  // namespace fpdyn
