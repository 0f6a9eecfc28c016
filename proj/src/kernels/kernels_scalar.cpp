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
// Scalar reference kernels. These define the exact arithmetic the SIMD
// variants must reproduce lane-for-lane: select first, then clamp into [0,1];
// rule accumulation in fixed (i,j) order; no fused multiply-add anywhere.

#include <cmath>

#include "kernels_internal.hpp"

namespace lumloc::kernels {
namespace {

// Triangular membership with shoulder handling. Branch values match the
// compute-then-blend SIMD form: the selected branch is never NaN, the final
// clamp absorbs the -inf produced by degenerate edges, and the clamp ternaries
// mirror maxpd/minpd operand order so -0.0 lanes agree bit-for-bit.
inline double tri_mu(double x, double a, double m, double b) {
    const double rising = (x - a) / (m - a);
    const double falling = (b - x) / (b - m);
    double v = x < m ? rising : (x > m ? falling : 1.0);
    v = v > 0.0 ? v : 0.0;
    v = v < 1.0 ? v : 1.0;
    return v;
}

inline double clamp_to(double x, double lo, double hi) {
    x = x > lo ? x : lo;
    x = x < hi ? x : hi;
    return x;
}

void mf_eval_scalar(const double* x, std::size_t n, double a, double m, double b, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = tri_mu(x[i], a, m, b);
}

void flc_singleton_scalar(const SingletonPack& p, const double* x1, const double* x2,
                          std::size_t n, double* out, std::size_t* zero_fired) {
    std::size_t zf = 0;
    for (std::size_t e = 0; e < n; ++e) {
        const double u = clamp_to(x1[e], p.lo1, p.hi1);
        const double v = clamp_to(x2[e], p.lo2, p.hi2);
        double mu1[3], mu2[3];
        for (int t = 0; t < 3; ++t) {
            mu1[t] = tri_mu(u, p.a1[t], p.m1[t], p.b1[t]);
            mu2[t] = tri_mu(v, p.a2[t], p.m2[t], p.b2[t]);
        }
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double s =
                    p.product_tnorm ? mu1[i] * mu2[j] : (mu1[i] < mu2[j] ? mu1[i] : mu2[j]);
                num = num + s * p.consequent[i * 3 + j];
                den = den + s;
            }
        }
        if (den > 0.0) {
            out[e] = num / den;
        } else {
            out[e] = 0.0;
            ++zf;
        }
    }
    if (zero_fired)
        *zero_fired = zf;
}

void distance_scalar(const double* cx, const double* cy, std::size_t n, double ax, double ay,
                     double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = cx[i] - ax;
        const double dy = cy[i] - ay;
        out[i] = std::sqrt(dx * dx + dy * dy);
    }
}

void abs_residual_scalar(const double* dist, std::size_t n, double w_hat, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::fabs(w_hat - dist[i]);
}

void weighted_sq_accumulate_scalar(double* acc, const double* dist, std::size_t n, double w_hat,
                                   double weight) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = w_hat - dist[i];
        acc[i] = acc[i] + weight * (r * r);
    }
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{mf_eval_scalar, flc_singleton_scalar, distance_scalar,
                                   abs_residual_scalar, weighted_sq_accumulate_scalar};
    return table;
}

} // namespace lumloc::kernels
