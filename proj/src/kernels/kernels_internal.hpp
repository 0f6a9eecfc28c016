// lumloc - indoor positioning from visible-light RSSI with fuzzy inference
// and particle-swarm tuned controllers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "lumloc/kernels.hpp"

namespace lumloc::kernels {

// One vtable entry per batched op. Each backend TU fills one of these.
struct KernelTable {
    void (*mf_eval)(const double*, std::size_t, double, double, double, double*);
    void (*flc_singleton)(const SingletonPack&, const double*, const double*, std::size_t,
                          double*, std::size_t*);
    void (*distance)(const double*, const double*, std::size_t, double, double, double*);
    void (*abs_residual)(const double*, std::size_t, double, double*);
    void (*weighted_sq_accumulate)(double*, const double*, std::size_t, double, double);
};

const KernelTable& scalar_table();

#if defined(LUMLOC_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif
#if defined(LUMLOC_HAVE_NEON_TU)
const KernelTable& neon_table();
#endif

} // namespace lumloc::kernels
