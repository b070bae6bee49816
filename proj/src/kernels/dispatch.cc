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

#include <atomic>
#include <cstdlib>
#include <string_view>
#include <vector>

#include "fpdyn/kernels.h"
#include "kernels_internal.h"

namespace fpdyn {
namespace kernels {
namespace {

const KernelTable* Detect() {
  const char* forced = std::getenv("FPDYN_KERNELS");
  if (forced != nullptr) {
    std::string_view name(forced);
    if (name == "scalar") return &internal::kScalarTable;
    if (name == "avx2" && internal::Avx2Table() != nullptr) {
      return internal::Avx2Table();
    }
    if (name == "neon" && internal::NeonTable() != nullptr) {
      return internal::NeonTable();
    }
  }
  if (const KernelTable* t = internal::Avx2Table()) return t;
  if (const KernelTable* t = internal::NeonTable()) return t;
  return &internal::kScalarTable;
}

std::atomic<const KernelTable*>& Slot() {
  static std::atomic<const KernelTable*> slot{Detect()};
  return slot;
}

}  // namespace

const KernelTable& Scalar() { return internal::kScalarTable; }

const KernelTable* ForIsa(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &internal::kScalarTable;
    case Isa::kAvx2:
      return internal::Avx2Table();
    case Isa::kNeon:
      return internal::NeonTable();
  }
  return nullptr;
}

std::vector<Isa> AvailableIsas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (ForIsa(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

const KernelTable& Active() { return *Slot().load(std::memory_order_acquire); }

void SetActive(Isa isa) {
  const KernelTable* t = ForIsa(isa);
  if (t != nullptr) Slot().store(t, std::memory_order_release);
}

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace kernels
}  // namespace fpdyn
