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

#include "lumloc/pso.hpp"

#include <algorithm>
#include <cmath>
#include "detail/strjoin.hpp"
#include <limits>

#include "lumloc/errors.hpp"

namespace lumloc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const FuzzyVariable& variable_of(const FlcSpec& spec, int var) {
    return var == 0 ? spec.input1 : (var == 1 ? spec.input2 : spec.output);
}

FuzzyVariable& variable_of(FlcSpec& spec, int var) {
    return var == 0 ? spec.input1 : (var == 1 ? spec.input2 : spec.output);
}

} // namespace

Chromosome encode_chromosome(const FlcSpec& spec) {
    Chromosome c;
    for (int v = 0; v < 3; ++v) {
        const auto& var = variable_of(spec, v);
        const int base = v * kFreeParamsPerVariable;
        c[base + 0] = var.terms[0].b; // c_L
        c[base + 1] = var.terms[0].m; // b_L
        c[base + 2] = var.terms[1].a; // a_M
        c[base + 3] = var.terms[1].b; // c_M
        c[base + 4] = var.terms[2].a; // a_H
        c[base + 5] = var.terms[2].m; // b_H
    }
    return c;
}

FlcSpec decode_chromosome(const Chromosome& chromosome, const FlcSpec& templ) {
    FlcSpec spec = templ;
    for (int v = 0; v < 3; ++v) {
        auto& var = variable_of(spec, v);
        const int base = v * kFreeParamsPerVariable;
        const double a_l = var.terms[0].a;
        const double b_m = var.terms[1].m;
        const double c_h = var.terms[2].b;
        const double c_l = chromosome[base + 0];
        const double b_l = chromosome[base + 1];
        const double a_m = chromosome[base + 2];
        const double c_m = chromosome[base + 3];
        const double a_h = chromosome[base + 4];
        const double b_h = chromosome[base + 5];
        struct Check {
            int rule;
            double lo, v, hi;
        };
        const Check checks[] = {{1, a_l, c_l, b_m}, {2, a_l, b_l, c_l}, {3, a_l, a_m, c_l},
                                {4, b_m, c_m, c_h}, {5, b_m, a_h, c_m}, {6, a_h, b_h, c_h}};
        for (const auto& chk : checks)
            if (!(chk.lo <= chk.v && chk.v <= chk.hi))
                throw Error(Errc::infeasible_chromosome,
                            detail::strjoin("variable ", var.name, " violates constraint ",
                                            chk.rule));
        var.terms[0] = TriangularMf{a_l, b_l, c_l};
        var.terms[1] = TriangularMf{a_m, b_m, c_m};
        var.terms[2] = TriangularMf{a_h, b_h, c_h};
    }
    return spec;
}

Interval compute_bounds(const Chromosome& chromosome, int dim, const FlcSpec& templ,
                        double epsilon_scale) {
    if (dim < 0 || dim >= kChromosomeSize)
        throw Error(Errc::out_of_range, "chromosome dimension out of range");
    const int v = dim / kFreeParamsPerVariable;
    const int p = dim % kFreeParamsPerVariable;
    const auto& var = variable_of(templ, v);
    const double eps = epsilon_scale * (var.hi - var.lo);
    const double a_l = var.terms[0].a;
    const double b_m = var.terms[1].m;
    const double c_h = var.terms[2].b;
    const int base = v * kFreeParamsPerVariable;
    const double c_l = chromosome[base + 0];
    const double c_m = chromosome[base + 3];
    const double a_h = chromosome[base + 4];

    Interval b;
    bool dependent = true;
    switch (p) {
    case 0: // c_L
        b = {a_l + eps, b_m - eps};
        dependent = false;
        break;
    case 1: // b_L
        b = {a_l + eps, c_l - eps};
        break;
    case 2: // a_M
        b = {a_l + eps, c_l - eps};
        break;
    case 3: // c_M
        b = {b_m + eps, c_h - eps};
        dependent = false;
        break;
    case 4: // a_H
        b = {b_m + eps, c_m - eps};
        break;
    default: // b_H
        b = {a_h + eps, c_h - eps};
        break;
    }
    if (b.lo > b.hi) {
        // Intervals tied to another free parameter can collapse when that
        // parameter sits on its own bound; pin them to a point. Template-only
        // intervals cannot, so emptiness there is a configuration error.
        if (dependent)
            b.hi = b.lo;
        else
            throw Error(Errc::empty_interval,
                        detail::strjoin("margin ", eps, " leaves no room in variable ", var.name));
    }
    return b;
}

double clamp_position_proportional(double x, Interval old_bounds, Interval new_bounds) {
    const double old_width = old_bounds.hi - old_bounds.lo;
    if (!(old_width > 0.0))
        throw Error(Errc::degenerate_old_interval, "previous bounds have zero width");
    if (x < new_bounds.lo) {
        // Sign-corrected lower remap: endpoints map old.lo -> new.lo and
        // old.hi -> old.hi.
        x = old_bounds.hi +
            (new_bounds.lo - old_bounds.hi) / (old_bounds.lo - old_bounds.hi) * (x - old_bounds.hi);
    } else if (x > new_bounds.hi) {
        // Upper remap as printed: old.lo -> old.lo, old.hi -> new.hi.
        x = old_bounds.lo +
            (new_bounds.hi - old_bounds.lo) / (old_bounds.hi - old_bounds.lo) * (x - old_bounds.lo);
    }
    return std::clamp(x, new_bounds.lo, new_bounds.hi);
}

Swarm init_swarm(const PsoConfig& config, const FlcSpec& templ) {
    if (config.swarm_size < 1 || config.iterations < 1)
        throw Error(Errc::invalid_config, "swarm size and iterations must be >= 1");
    if (config.inertia < 0.0 || config.cognitive < 0.0 || config.social < 0.0)
        throw Error(Errc::invalid_config, "PSO gains must be >= 0");

    Swarm swarm;
    swarm.particles.reserve(static_cast<std::size_t>(config.swarm_size));
    for (int k = 0; k < config.swarm_size; ++k) {
        Particle particle;
        particle.rng = Rng(derive_seed(config.seed, static_cast<std::uint64_t>(k), 0x50534fULL));
        for (int d = 0; d < kChromosomeSize; ++d) {
            const Interval b = compute_bounds(particle.position, d, templ, config.epsilon_scale);
            particle.position[d] = particle.rng.uniform(b.lo, b.hi);
            particle.bounds[static_cast<std::size_t>(d)] = b;
        }
        particle.pbest = particle.position;
        particle.pbest_fitness = kNegInf;
        swarm.particles.push_back(std::move(particle));
    }
    swarm.gbest = swarm.particles.front().position;
    swarm.gbest_fitness = kNegInf;
    return swarm;
}

namespace {

double safe_fitness(const FitnessFn& fitness, const Chromosome& c) {
    try {
        return fitness(c);
    } catch (const Error&) {
        return kNegInf;
    }
}

void refresh_gbest(Swarm& swarm) {
    // Scan with strict improvement: ties keep the lowest particle index.
    swarm.gbest_fitness = kNegInf;
    swarm.gbest = swarm.particles.front().pbest;
    for (const auto& p : swarm.particles) {
        if (p.pbest_fitness > swarm.gbest_fitness) {
            swarm.gbest_fitness = p.pbest_fitness;
            swarm.gbest = p.pbest;
        }
    }
}

} // namespace

PsoResult run_pso(const PsoConfig& config, const FlcSpec& templ, const FitnessFn& fitness,
                  const SwarmObserver& observer) {
    Swarm swarm = init_swarm(config, templ);
    for (auto& p : swarm.particles)
        p.pbest_fitness = safe_fitness(fitness, p.position);
    refresh_gbest(swarm);
    swarm.trace.push_back(swarm.gbest_fitness);
    if (observer)
        observer(0, swarm);

    for (int iter = 1; iter <= config.iterations; ++iter) {
        for (auto& particle : swarm.particles) {
            for (int d = 0; d < kChromosomeSize; ++d) {
                const auto di = static_cast<std::size_t>(d);
                const Interval nb =
                    compute_bounds(particle.position, d, templ, config.epsilon_scale);
                const Interval ob = particle.bounds[di];
                double x = particle.position[d];
                if (x < nb.lo || x > nb.hi) {
                    if (ob.hi - ob.lo > 0.0)
                        x = clamp_position_proportional(x, ob, nb);
                    else
                        x = std::clamp(x, nb.lo, nb.hi);
                }

                const double r1 = particle.rng.uniform01();
                const double r2 = particle.rng.uniform01();
                const double v_old = particle.velocity[di];
                const double pull_p = config.cognitive * r1;
                const double pull_g = config.social * r2;
                double v = config.inertia * v_old + pull_p * (particle.pbest[d] - x) +
                           pull_g * (swarm.gbest[d] - x);
                // Velocity window from the same draws, anchored at the new
                // bounds.
                const double v_min = config.inertia * v_old + pull_p * (particle.pbest[d] - nb.hi) +
                                     pull_g * (swarm.gbest[d] - nb.hi);
                const double v_max = config.inertia * v_old + pull_p * (particle.pbest[d] - nb.lo) +
                                     pull_g * (swarm.gbest[d] - nb.lo);
                v = std::clamp(v, std::min(v_min, v_max), std::max(v_min, v_max));

                double x_new = x + v;
                if (x_new < nb.lo) {
                    const double corrected = x_new + v / v_min * (ob.lo - x);
                    if (std::isfinite(corrected))
                        x_new = corrected;
                } else if (x_new > nb.hi) {
                    const double corrected = x_new + v / v_max * (ob.hi - x);
                    if (std::isfinite(corrected))
                        x_new = corrected;
                }
                x_new = std::clamp(x_new, nb.lo, nb.hi);

                particle.position[d] = x_new;
                particle.velocity[di] = v;
                particle.bounds[di] = nb;
            }
        }

        for (auto& particle : swarm.particles) {
            const double f = safe_fitness(fitness, particle.position);
            if (f > particle.pbest_fitness) {
                particle.pbest_fitness = f;
                particle.pbest = particle.position;
            }
        }
        refresh_gbest(swarm);
        swarm.trace.push_back(swarm.gbest_fitness);
        if (observer)
            observer(iter, swarm);
    }
    return {swarm.gbest, swarm.gbest_fitness, swarm.trace};
}

FitnessFn make_mean_output_fitness(const FlcSpec& templ) {
    constexpr int kGrid = 21;
    std::vector<double> x1, x2;
    x1.reserve(kGrid * kGrid);
    x2.reserve(kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double u = templ.input1.lo + (templ.input1.hi - templ.input1.lo) * i / (kGrid - 1);
        for (int j = 0; j < kGrid; ++j) {
            const double v =
                templ.input2.lo + (templ.input2.hi - templ.input2.lo) * j / (kGrid - 1);
            x1.push_back(u);
            x2.push_back(v);
        }
    }
    return [templ, x1 = std::move(x1), x2 = std::move(x2)](const Chromosome& c) {
        const FlcSpec spec = decode_chromosome(c, templ);
        std::vector<double> out(x1.size());
        flc_infer_batch(spec, x1, x2, out);
        double sum = 0.0;
        for (const double v : out)
            sum += v;
        return sum / static_cast<double>(out.size());
    };
}

} // namespace lumloc
