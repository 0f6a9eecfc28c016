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

#include <atomic>

#include "kernels_internal.hpp"
#include "lumloc/errors.hpp"

namespace lumloc::kernels {
namespace {

struct Selected {
    const KernelTable* table;
    Backend backend;
};

bool cpu_has_avx2() {
#if defined(LUMLOC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Selected pick_default() {
#if defined(LUMLOC_HAVE_AVX2_TU)
    if (cpu_has_avx2())
        return {&avx2_table(), Backend::avx2};
#endif
#if defined(LUMLOC_HAVE_NEON_TU)
    return {&neon_table(), Backend::neon};
#endif
    return {&scalar_table(), Backend::scalar};
}

Selected& selected() {
    static Selected s = pick_default();
    return s;
}

} // namespace

Backend active_backend() { return selected().backend; }

bool backend_available(Backend backend) {
    switch (backend) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
        return cpu_has_avx2();
    case Backend::neon:
#if defined(LUMLOC_HAVE_NEON_TU)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const char* backend_name(Backend backend) {
    switch (backend) {
    case Backend::scalar:
        return "scalar";
    case Backend::avx2:
        return "avx2";
    case Backend::neon:
        return "neon";
    }
    return "?";
}

void force_backend(Backend backend) {
    if (!backend_available(backend))
        throw Error(Errc::invalid_config,
                    std::string("kernel backend not available: ") + backend_name(backend));
    switch (backend) {
    case Backend::scalar:
        selected() = {&scalar_table(), Backend::scalar};
        break;
    case Backend::avx2:
#if defined(LUMLOC_HAVE_AVX2_TU)
        selected() = {&avx2_table(), Backend::avx2};
#endif
        break;
    case Backend::neon:
#if defined(LUMLOC_HAVE_NEON_TU)
        selected() = {&neon_table(), Backend::neon};
#endif
        break;
    }
}

void mf_eval_batch(const double* x, std::size_t n, double a, double m, double b, double* out) {
    selected().table->mf_eval(x, n, a, m, b, out);
}

void flc_singleton_batch(const SingletonPack& pack, const double* x1, const double* x2,
                         std::size_t n, double* out, std::size_t* zero_fired) {
    selected().table->flc_singleton(pack, x1, x2, n, out, zero_fired);
}

void distance_batch(const double* cx, const double* cy, std::size_t n, double ax, double ay,
                    double* out) {
    selected().table->distance(cx, cy, n, ax, ay, out);
}

void abs_residual_batch(const double* dist, std::size_t n, double w_hat, double* out) {
    selected().table->abs_residual(dist, n, w_hat, out);
}

void weighted_sq_residual_accumulate(double* acc, const double* dist, std::size_t n, double w_hat,
                                     double weight) {
    selected().table->weighted_sq_accumulate(acc, dist, n, w_hat, weight);
}

} // namespace lumloc::kernels
