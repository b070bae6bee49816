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

#ifndef FPDYN_SRC_KERNELS_KERNELS_INTERNAL_H_
#define FPDYN_SRC_KERNELS_KERNELS_INTERNAL_H_

#include "fpdyn/kernels.h"

namespace fpdyn {
namespace kernels {
namespace internal {

extern const KernelTable kScalarTable;

// Null when the variant was not compiled for this target.
const KernelTable* Avx2Table();
const KernelTable* NeonTable();

}  // namespace internal
}  // namespace kernels
}  // namespace fpdyn

#endif  // FPDYN_SRC_KERNELS_KERNELS_INTERNAL_H_
