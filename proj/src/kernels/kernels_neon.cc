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

#if defined(__aarch64__) && defined(__ARM_NEON)
#define FPDYN_HAVE_NEON 1
#include <arm_neon.h>
#endif

namespace fpdyn {
namespace kernels {
namespace internal {

#if FPDYN_HAVE_NEON
namespace {

// Two float64x2 registers stand in for one four-lane accumulator so the
// reduction order matches the scalar reference.

void AxpyNeon(double* y, double s, const double* x, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t prod = vmulq_f64(vs, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += s * x[i];
}

void AddNeon(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += x[i];
}

void SubNeon(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vsubq_f64(vld1q_f64(y + i), vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] -= x[i];
}

void AddScaledNeon(double* out, const double* y, double s, const double* x,
                   std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t prod = vmulq_f64(vs, vld1q_f64(x + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) out[i] = y[i] + s * x[i];
}

double MaxNeon(const double* x, std::size_t n) {
  double m = x[0];
  std::size_t i = 1;
  if (n >= 2) {
    float64x2_t acc = vld1q_f64(x);
    for (i = 2; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(x + i));
    double a0 = vgetq_lane_f64(acc, 0);
    double a1 = vgetq_lane_f64(acc, 1);
    m = a1 > a0 ? a1 : a0;
  }
  for (; i < n; ++i) {
    if (x[i] > m) m = x[i];
  }
  return m;
}

std::size_t IndicesAtLeastNeon(const double* x, double threshold,
                               std::size_t n, int* out) {
  const float64x2_t vt = vdupq_n_f64(threshold);
  std::size_t k = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t ge = vcgeq_f64(vld1q_f64(x + i), vt);
    if (vgetq_lane_u64(ge, 0)) out[k++] = static_cast<int>(i);
    if (vgetq_lane_u64(ge, 1)) out[k++] = static_cast<int>(i + 1);
  }
  for (; i < n; ++i) {
    if (x[i] >= threshold) out[k++] = static_cast<int>(i);
  }
  return k;
}

double DotNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 =
        vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double lane[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                    vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
  for (; i < n; ++i) lane[i & 3] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

const KernelTable kNeonTable = {
    Isa::kNeon, "neon",         &AxpyNeon, &AddNeon,           &SubNeon,
    &AddScaledNeon, &MaxNeon, &IndicesAtLeastNeon, &DotNeon};

}  // namespace

const KernelTable* NeonTable() { return &kNeonTable; }

#else

const KernelTable* NeonTable() { return nullptr; }

#endif

}  // namespace internal
}  // namespace kernels
}  // namespace fpdyn
