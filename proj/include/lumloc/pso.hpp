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
// Constrained particle swarm tuner for the controllers' membership functions.
// Each controller has 18 free parameters (per variable, in update order:
// c_L, b_L, a_M, c_M, a_H, b_H) while a_L, b_M and c_H stay fixed at the
// template's values. Bounds are recomputed per dimension from the values
// already updated in the same iteration, and positions are kept feasible via
// proportional remapping plus a final hard clamp. Everything is driven by
// per-particle RNG streams derived from the master seed, so runs are
// reproducible regardless of evaluation order.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "lumloc/fuzzy.hpp"
#include "lumloc/rng.hpp"

namespace lumloc {

inline constexpr int kFreeParamsPerVariable = 6;
inline constexpr int kChromosomeSize = 18;

/// Free membership-function parameters for the three variables of one
/// controller, flattened as [input1 | input2 | output].
struct Chromosome {
    std::array<double, kChromosomeSize> values{};

    double& operator[](int d) { return values[static_cast<std::size_t>(d)]; }
    double operator[](int d) const { return values[static_cast<std::size_t>(d)]; }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct PsoConfig {
    int swarm_size = 50;
    int iterations = 20;
    double inertia = 0.74;
    double cognitive = 1.47; // c1
    double social = 1.47;    // c2
    std::uint64_t seed = 0;
    double epsilon_scale = 1e-6; // feasibility margin per unit of universe width
};

struct Particle {
    Chromosome position;
    std::array<double, kChromosomeSize> velocity{};
    Chromosome pbest;
    double pbest_fitness = 0.0;
    std::array<Interval, kChromosomeSize> bounds{}; // bounds current position was formed under
    Rng rng{0};
};

struct Swarm {
    std::vector<Particle> particles;
    Chromosome gbest;
    double gbest_fitness = 0.0;
    std::vector<double> trace; // gbest fitness after init (index 0) and each iteration
};

/// Read the free parameters out of a controller description.
Chromosome encode_chromosome(const FlcSpec& spec);

/// Substitute the free parameters into the template. Throws
/// Errc::infeasible_chromosome if any ordering constraint (non-strict) fails.
FlcSpec decode_chromosome(const Chromosome& chromosome, const FlcSpec& templ);

/// Feasible interval for dimension `dim`, given the fixed template parameters
/// and the chromosome values already updated this iteration. Dependent
/// intervals that collapse snap to a point; structurally empty intervals
/// (margin too large for the template) throw Errc::empty_interval.
Interval compute_bounds(const Chromosome& chromosome, int dim, const FlcSpec& templ,
                        double epsilon_scale);

/// Proportional remap of a position into refreshed bounds: values below the
/// new lower bound map [old.lo, old.hi] onto [new.lo, old.hi]; values above
/// the new upper bound map [old.lo, old.hi] onto [old.lo, new.hi]; a final
/// hard clamp guarantees containment. Throws Errc::degenerate_old_interval.
double clamp_position_proportional(double x, Interval old_bounds, Interval new_bounds);

/// Uniform feasible initialization, zero velocities, pbest = position.
/// Fitness fields are left at -infinity until run_pso evaluates them.
Swarm init_swarm(const PsoConfig& config, const FlcSpec& templ);

using FitnessFn = std::function<double(const Chromosome&)>;
using SwarmObserver = std::function<void(int iteration, const Swarm&)>;

struct PsoResult {
    Chromosome best;
    double best_fitness = 0.0;
    std::vector<double> trace;
};

/// Synchronous constrained PSO, maximizing. Per iteration each particle's 18
/// dimensions are updated in order against the previous iteration's global
/// best; pbest/gbest ties keep the earlier holder (lowest particle index).
/// A fitness that throws lumloc::Error scores -infinity. The optional
/// observer runs after initialization (iteration 0) and after each iteration.
PsoResult run_pso(const PsoConfig& config, const FlcSpec& templ, const FitnessFn& fitness,
                  const SwarmObserver& observer = {});

/// Mean controller output over a fixed 21x21 grid spanning both input
/// universes; grid points the candidate does not cover contribute 0.
FitnessFn make_mean_output_fitness(const FlcSpec& templ);

} // namespace lumloc
