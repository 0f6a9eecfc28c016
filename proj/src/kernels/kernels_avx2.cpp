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
//
// AVX2 variants, 4 doubles per lane group. Compiled with -mavx2 only (no
// -mfma): mul/add stay separate so results match the scalar reference
// bit-for-bit. Tails fall through to the scalar table.

#include "kernels_internal.hpp"

#if defined(LUMLOC_HAVE_AVX2_TU)

#include <immintrin.h>

namespace lumloc::kernels {
namespace {

// Same select-then-clamp sequence as the scalar tri_mu. Division by zero in an
// unselected branch is discarded by the blend.
inline __m256d tri_mu4(__m256d x, double a, double m, double b) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vm = _mm256_set1_pd(m);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d rising = _mm256_div_pd(_mm256_sub_pd(x, va), _mm256_set1_pd(m - a));
    const __m256d falling = _mm256_div_pd(_mm256_sub_pd(vb, x), _mm256_set1_pd(b - m));
    const __m256d lt = _mm256_cmp_pd(x, vm, _CMP_LT_OQ);
    const __m256d gt = _mm256_cmp_pd(x, vm, _CMP_GT_OQ);
    __m256d v = _mm256_blendv_pd(_mm256_set1_pd(1.0), falling, gt);
    v = _mm256_blendv_pd(v, rising, lt);
    v = _mm256_max_pd(v, _mm256_setzero_pd());
    v = _mm256_min_pd(v, _mm256_set1_pd(1.0));
    return v;
}

inline __m256d clamp4(__m256d x, double lo, double hi) {
    x = _mm256_max_pd(x, _mm256_set1_pd(lo));
    x = _mm256_min_pd(x, _mm256_set1_pd(hi));
    return x;
}

void mf_eval_avx2(const double* x, std::size_t n, double a, double m, double b, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, tri_mu4(_mm256_loadu_pd(x + i), a, m, b));
    if (i < n)
        scalar_table().mf_eval(x + i, n - i, a, m, b, out + i);
}

void flc_singleton_avx2(const SingletonPack& p, const double* x1, const double* x2, std::size_t n,
                        double* out, std::size_t* zero_fired) {
    std::size_t zf = 0;
    std::size_t i = 0;
    const __m256d zero = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        const __m256d u = clamp4(_mm256_loadu_pd(x1 + i), p.lo1, p.hi1);
        const __m256d v = clamp4(_mm256_loadu_pd(x2 + i), p.lo2, p.hi2);
        __m256d mu1[3], mu2[3];
        for (int t = 0; t < 3; ++t) {
            mu1[t] = tri_mu4(u, p.a1[t], p.m1[t], p.b1[t]);
            mu2[t] = tri_mu4(v, p.a2[t], p.m2[t], p.b2[t]);
        }
        __m256d num = zero, den = zero;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                const __m256d s = p.product_tnorm ? _mm256_mul_pd(mu1[r], mu2[c])
                                                  : _mm256_min_pd(mu1[r], mu2[c]);
                num = _mm256_add_pd(num, _mm256_mul_pd(s, _mm256_set1_pd(p.consequent[r * 3 + c])));
                den = _mm256_add_pd(den, s);
            }
        }
        const __m256d fired = _mm256_cmp_pd(den, zero, _CMP_GT_OQ);
        const __m256d q = _mm256_div_pd(num, den);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(zero, q, fired));
        zf += 4 - static_cast<std::size_t>(_mm_popcnt_u32(
                      static_cast<unsigned>(_mm256_movemask_pd(fired))));
    }
    if (i < n) {
        std::size_t tail_zf = 0;
        scalar_table().flc_singleton(p, x1 + i, x2 + i, n - i, out + i, &tail_zf);
        zf += tail_zf;
    }
    if (zero_fired)
        *zero_fired = zf;
}

void distance_avx2(const double* cx, const double* cy, std::size_t n, double ax, double ay,
                   double* out) {
    const __m256d vax = _mm256_set1_pd(ax);
    const __m256d vay = _mm256_set1_pd(ay);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(cx + i), vax);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(cy + i), vay);
        const __m256d sum = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sum));
    }
    if (i < n)
        scalar_table().distance(cx + i, cy + i, n - i, ax, ay, out + i);
}

void abs_residual_avx2(const double* dist, std::size_t n, double w_hat, double* out) {
    const __m256d vw = _mm256_set1_pd(w_hat);
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_sub_pd(vw, _mm256_loadu_pd(dist + i));
        _mm256_storeu_pd(out + i, _mm256_and_pd(r, mask));
    }
    if (i < n)
        scalar_table().abs_residual(dist + i, n - i, w_hat, out + i);
}

void weighted_sq_accumulate_avx2(double* acc, const double* dist, std::size_t n, double w_hat,
                                 double weight) {
    const __m256d vw = _mm256_set1_pd(w_hat);
    const __m256d vweight = _mm256_set1_pd(weight);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_sub_pd(vw, _mm256_loadu_pd(dist + i));
        const __m256d term = _mm256_mul_pd(vweight, _mm256_mul_pd(r, r));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), term));
    }
    if (i < n)
        scalar_table().weighted_sq_accumulate(acc + i, dist + i, n - i, w_hat, weight);
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{mf_eval_avx2, flc_singleton_avx2, distance_avx2,
                                   abs_residual_avx2, weighted_sq_accumulate_avx2};
    return table;
}

} // namespace lumloc::kernels

#endif // LUMLOC_HAVE_AVX2_TU
