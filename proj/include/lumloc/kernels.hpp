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
// Batched arithmetic kernels behind the fuzzy pipeline. Every operation has a
// scalar reference implementation plus SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected once at runtime. The SIMD variants are written to be
// bit-identical to the scalar reference: no FMA contraction, identical
// per-element operation order, IEEE-exact primitives only (+,-,*,/,sqrt,
// min/max/select). Equivalence is asserted exactly in the test suite, and the
// localization argmin relies on it.

#pragma once

#include <cstddef>
#include <cstdint>

namespace lumloc::kernels {

enum class Backend { scalar, avx2, neon };

/// Backend chosen by runtime dispatch (CPU feature probe on first use).
Backend active_backend();

/// Override the dispatched backend (tests). Throws Errc::invalid_config if the
/// requested backend is not compiled in or not supported by this CPU.
void force_backend(Backend backend);

/// Backends usable on this machine.
bool backend_available(Backend backend);

const char* backend_name(Backend backend);

/// Flattened two-input, three-term singleton controller, ready for batched
/// inference. Term order is Low, Medium, High; consequents are row-major with
/// input1's term as the row.
struct SingletonPack {
    double lo1, hi1;
    double lo2, hi2;
    double a1[3], m1[3], b1[3];
    double a2[3], m2[3], b2[3];
    double consequent[9];
    bool product_tnorm = false;
};

/// out[i] = clamped triangular membership of x[i] for (a, m, b), with the
/// shoulder convention mu(m) = 1 even when a == m or m == b.
void mf_eval_batch(const double* x, std::size_t n, double a, double m, double b, double* out);

/// Batched singleton inference. Inputs are clamped into the pack's universes.
/// Elements whose total firing strength is zero produce 0; when `zero_fired`
/// is non-null it receives the count of such elements.
void flc_singleton_batch(const SingletonPack& pack, const double* x1, const double* x2,
                         std::size_t n, double* out, std::size_t* zero_fired = nullptr);

/// out[i] = sqrt((cx[i]-ax)^2 + (cy[i]-ay)^2)
void distance_batch(const double* cx, const double* cy, std::size_t n, double ax, double ay,
                    double* out);

/// out[i] = |w_hat - dist[i]|
void abs_residual_batch(const double* dist, std::size_t n, double w_hat, double* out);

/// acc[i] += weight * (w_hat - dist[i])^2
void weighted_sq_residual_accumulate(double* acc, const double* dist, std::size_t n, double w_hat,
                                     double weight);

} // namespace lumloc::kernels
