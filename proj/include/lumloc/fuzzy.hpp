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
// Two-input, three-term fuzzy controllers with triangular membership
// functions. Controller 1 scores how well an anchor's fitted channel
// parameters agree with the fleet medians; controller 2 combines that score
// with a proximity index into the per-anchor weight used by the localizer.
// All types are immutable values after construction; all functions are pure.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lumloc/kernels.hpp"

namespace lumloc {

/// Triangular membership function: left foot `a`, peak `m`, right foot `b`
/// with a <= m <= b. Degenerate feet (a == m or m == b) are shoulders: the
/// membership is 1 at the peak and the missing edge is treated as vertical.
struct TriangularMf {
    double a = 0.0;
    double m = 0.0;
    double b = 0.0;

    bool valid() const { return a <= m && m <= b; }
};

/// Piecewise-linear membership degree in [0, 1]. Total on the reals: values
/// outside [a, b] evaluate to 0.
double mf_eval(const TriangularMf& mf, double x);

enum class TermIndex { low = 0, medium = 1, high = 2 };

inline constexpr std::array<const char*, 3> kTermNames{"Low", "Medium", "High"};

/// One linguistic variable: a closed universe and exactly three terms.
struct FuzzyVariable {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::array<TriangularMf, 3> terms{}; // Low, Medium, High

    const TriangularMf& term(TermIndex t) const { return terms[static_cast<std::size_t>(t)]; }
};

/// Membership degrees of x (clamped into the universe) for the three terms.
std::array<double, 3> fuzzify(const FuzzyVariable& var, double x);

/// 3x3 crisp rule consequents in [0, 1], indexed [input1 term][input2 term].
struct RuleTable {
    std::array<std::array<double, 3>, 3> consequents{};

    double at(TermIndex r, TermIndex c) const {
        return consequents[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
};

enum class InferenceMode { singleton, mamdani_clipped };
enum class TNorm { min, product };

/// Full controller description. In singleton mode the output variable's
/// membership functions are carried but have no effect on inference; in
/// mamdani_clipped mode each rule's consequent is mapped to an output term by
/// thresholding (< 1/3 Low, < 2/3 Medium, else High) and defuzzified as the
/// strength-weighted average of clipped-triangle centroids.
struct FlcSpec {
    FuzzyVariable input1;
    FuzzyVariable input2;
    FuzzyVariable output;
    RuleTable rules;
    InferenceMode mode = InferenceMode::singleton;
    TNorm tnorm = TNorm::min;
};

/// Output term chosen for a consequent value in mamdani_clipped mode.
TermIndex consequent_term_label(double consequent);

/// Centroid of `mf` clipped at height `h` in (0, 1]. A zero-base triangle
/// degenerates to its peak.
double clipped_centroid(const TriangularMf& mf, double h);

/// Crisp inference for one input pair. Inputs are clamped into the universes.
/// Throws Errc::zero_firing when no rule fires (impossible for the default
/// controllers, whose terms cover the whole universe).
double flc_infer(const FlcSpec& spec, double x1, double x2);

/// Batched inference via the dispatched kernels (singleton mode) or a scalar
/// loop (mamdani_clipped). Zero-firing elements yield 0 instead of throwing;
/// `zero_fired`, when non-null, receives their count.
void flc_infer_batch(const FlcSpec& spec, std::span<const double> x1, std::span<const double> x2,
                     std::span<double> out, std::size_t* zero_fired = nullptr);

/// Flatten a singleton-mode controller for the batched kernels.
kernels::SingletonPack make_singleton_pack(const FlcSpec& spec);

/// Structural checks: per-variable term validity and universe containment,
/// the six free-parameter ordering constraints (non-strict, so shoulder
/// geometries are legal), rule consequents in [0, 1], and universe coverage
/// sampled on the open interior. Returns every violation found.
std::vector<std::string> validate_flc(const FlcSpec& spec);

/// Controller 1: inputs Z% over [0, 100] and K over [0, 1], reliability
/// output, table-defined rule consequents.
FlcSpec default_flc1();

/// Controller 2: anchor reliability and normalized RSSI over [0, 1], total
/// reliability output.
FlcSpec default_flc2();

} // namespace lumloc
