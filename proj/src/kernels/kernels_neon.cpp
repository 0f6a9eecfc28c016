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
// NEON variants, 2 doubles per lane group. Plain mul/add only (no vfma) so
// results stay bit-identical to the scalar reference.

#include "kernels_internal.hpp"

#if defined(LUMLOC_HAVE_NEON_TU)

#include <arm_neon.h>

namespace lumloc::kernels {
namespace {

inline float64x2_t tri_mu2(float64x2_t x, double a, double m, double b) {
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vm = vdupq_n_f64(m);
    const float64x2_t vb = vdupq_n_f64(b);
    const float64x2_t rising = vdivq_f64(vsubq_f64(x, va), vdupq_n_f64(m - a));
    const float64x2_t falling = vdivq_f64(vsubq_f64(vb, x), vdupq_n_f64(b - m));
    const uint64x2_t lt = vcltq_f64(x, vm);
    const uint64x2_t gt = vcgtq_f64(x, vm);
    float64x2_t v = vbslq_f64(gt, falling, vdupq_n_f64(1.0));
    v = vbslq_f64(lt, rising, v);
    // mirror the scalar (v > 0 ? v : 0) / (v < 1 ? v : 1) clamp
    v = vbslq_f64(vcgtq_f64(v, vdupq_n_f64(0.0)), v, vdupq_n_f64(0.0));
    v = vbslq_f64(vcltq_f64(v, vdupq_n_f64(1.0)), v, vdupq_n_f64(1.0));
    return v;
}

inline float64x2_t clamp2(float64x2_t x, double lo, double hi) {
    const float64x2_t vlo = vdupq_n_f64(lo);
    const float64x2_t vhi = vdupq_n_f64(hi);
    x = vbslq_f64(vcgtq_f64(x, vlo), x, vlo);
    x = vbslq_f64(vcltq_f64(x, vhi), x, vhi);
    return x;
}

void mf_eval_neon(const double* x, std::size_t n, double a, double m, double b, double* out) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, tri_mu2(vld1q_f64(x + i), a, m, b));
    if (i < n)
        scalar_table().mf_eval(x + i, n - i, a, m, b, out + i);
}

void flc_singleton_neon(const SingletonPack& p, const double* x1, const double* x2, std::size_t n,
                        double* out, std::size_t* zero_fired) {
    std::size_t zf = 0;
    std::size_t i = 0;
    const float64x2_t zero = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        const float64x2_t u = clamp2(vld1q_f64(x1 + i), p.lo1, p.hi1);
        const float64x2_t v = clamp2(vld1q_f64(x2 + i), p.lo2, p.hi2);
        float64x2_t mu1[3], mu2[3];
        for (int t = 0; t < 3; ++t) {
            mu1[t] = tri_mu2(u, p.a1[t], p.m1[t], p.b1[t]);
            mu2[t] = tri_mu2(v, p.a2[t], p.m2[t], p.b2[t]);
        }
        float64x2_t num = zero, den = zero;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                const float64x2_t s = p.product_tnorm
                                          ? vmulq_f64(mu1[r], mu2[c])
                                          : vbslq_f64(vcltq_f64(mu1[r], mu2[c]), mu1[r], mu2[c]);
                num = vaddq_f64(num, vmulq_f64(s, vdupq_n_f64(p.consequent[r * 3 + c])));
                den = vaddq_f64(den, s);
            }
        }
        const uint64x2_t fired = vcgtq_f64(den, zero);
        const float64x2_t q = vdivq_f64(num, den);
        vst1q_f64(out + i, vbslq_f64(fired, q, zero));
        zf += (vgetq_lane_u64(fired, 0) ? 0u : 1u) + (vgetq_lane_u64(fired, 1) ? 0u : 1u);
    }
    if (i < n) {
        std::size_t tail_zf = 0;
        scalar_table().flc_singleton(p, x1 + i, x2 + i, n - i, out + i, &tail_zf);
        zf += tail_zf;
    }
    if (zero_fired)
        *zero_fired = zf;
}

void distance_neon(const double* cx, const double* cy, std::size_t n, double ax, double ay,
                   double* out) {
    const float64x2_t vax = vdupq_n_f64(ax);
    const float64x2_t vay = vdupq_n_f64(ay);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(cx + i), vax);
        const float64x2_t dy = vsubq_f64(vld1q_f64(cy + i), vay);
        vst1q_f64(out + i, vsqrtq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy))));
    }
    if (i < n)
        scalar_table().distance(cx + i, cy + i, n - i, ax, ay, out + i);
}

void abs_residual_neon(const double* dist, std::size_t n, double w_hat, double* out) {
    const float64x2_t vw = vdupq_n_f64(w_hat);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vabsq_f64(vsubq_f64(vw, vld1q_f64(dist + i))));
    if (i < n)
        scalar_table().abs_residual(dist + i, n - i, w_hat, out + i);
}

void weighted_sq_accumulate_neon(double* acc, const double* dist, std::size_t n, double w_hat,
                                 double weight) {
    const float64x2_t vw = vdupq_n_f64(w_hat);
    const float64x2_t vweight = vdupq_n_f64(weight);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t r = vsubq_f64(vw, vld1q_f64(dist + i));
        const float64x2_t term = vmulq_f64(vweight, vmulq_f64(r, r));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), term));
    }
    if (i < n)
        scalar_table().weighted_sq_accumulate(acc + i, dist + i, n - i, w_hat, weight);
}

} // namespace

const KernelTable& neon_table() {
    static const KernelTable table{mf_eval_neon, flc_singleton_neon, distance_neon,
                                   abs_residual_neon, weighted_sq_accumulate_neon};
    return table;
}

} // namespace lumloc::kernels

#endif // LUMLOC_HAVE_NEON_TU
