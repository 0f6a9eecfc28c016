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

#include <cmath>
#include <cstdint>
#include <random>

namespace lumloc {

/// splitmix64 finalizer. Used to derive substream seeds from a master seed
/// plus stream keys, so substreams stay decorrelated and schedule-independent.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
                                 std::uint64_t k3 = 0) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ mix64(k1 + 0x100000001b3ULL));
    s = mix64(s ^ mix64(k2 + 0x9ddfea08eb382d69ULL));
    s = mix64(s ^ mix64(k3 + 0xc3a5c85c97cb3127ULL));
    return s;
}

/// Deterministic RNG: std::mt19937_64 (fully specified by the standard) with
/// explicit distribution code. std:: distributions are implementation-defined,
/// which would break byte-identical reruns, so they are not used here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi]; degenerate intervals return lo.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Box-Muller without caching: always consumes exactly two uniforms,
    /// keeping the draw count per call fixed.
    double gaussian(double mean, double sigma) {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0)
            u1 = 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * (r * std::cos(6.283185307179586476925286766559 * u2));
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace lumloc
