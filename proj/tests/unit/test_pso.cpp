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

#include <doctest.h>

#include <cmath>

#include "lumloc/errors.hpp"
#include "lumloc/pso.hpp"

using namespace lumloc;

namespace {

// Feasibility check written from the ordering constraints themselves: each
// dimension must sit inside the interval derived from the fixed template
// parameters and the already-final values, with margin eps (collapsed
// dependent intervals pin their dimension to the single feasible point).
bool chromosome_feasible(const Chromosome& c, const FlcSpec& templ, double eps_scale) {
    for (int v = 0; v < 3; ++v) {
        const auto& var = v == 0 ? templ.input1 : (v == 1 ? templ.input2 : templ.output);
        const double eps = eps_scale * (var.hi - var.lo);
        const double a_l = var.terms[0].a;
        const double b_m = var.terms[1].m;
        const double c_h = var.terms[2].b;
        const int base = v * kFreeParamsPerVariable;
        const double c_l = c[base + 0], b_l = c[base + 1], a_m = c[base + 2];
        const double c_m = c[base + 3], a_h = c[base + 4], b_h = c[base + 5];
        const auto inside = [](double x, double lo, double hi) {
            if (lo > hi)
                hi = lo; // collapsed interval pins to lo
            return x >= lo && x <= hi;
        };
        if (!inside(c_l, a_l + eps, b_m - eps))
            return false;
        if (!inside(b_l, a_l + eps, c_l - eps))
            return false;
        if (!inside(a_m, a_l + eps, c_l - eps))
            return false;
        if (!inside(c_m, b_m + eps, c_h - eps))
            return false;
        if (!inside(a_h, b_m + eps, c_m - eps))
            return false;
        if (!inside(b_h, a_h + eps, c_h - eps))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("pso: defaults match the reported configuration") {
    const PsoConfig config;
    CHECK(config.inertia == 0.74);
    CHECK(config.cognitive == 1.47);
    CHECK(config.social == 1.47);
    CHECK(config.iterations == 20);
}

TEST_CASE("pso: bound cascade over the unit output variable") {
    const FlcSpec templ = default_flc2();
    Chromosome c;
    const int base = 2 * kFreeParamsPerVariable; // output variable block
    const double eps = 1e-6;

    const Interval b0 = compute_bounds(c, base + 0, templ, eps);
    CHECK(b0.lo == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK(b0.hi == doctest::Approx(0.5 - 1e-6).epsilon(1e-15));

    c[base + 0] = 0.3;
    const Interval b1 = compute_bounds(c, base + 1, templ, eps);
    CHECK(b1.lo == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK(b1.hi == doctest::Approx(0.3 - 1e-6).epsilon(1e-15));

    c[base + 4] = 0.7;
    const Interval b5 = compute_bounds(c, base + 5, templ, eps);
    CHECK(b5.lo == doctest::Approx(0.7 + 1e-6).epsilon(1e-15));
    CHECK(b5.hi == doctest::Approx(1.0 - 1e-6).epsilon(1e-15));

    // margin too large for the template: structurally empty
    CHECK_THROWS_AS((void)compute_bounds(c, base + 0, templ, 0.3), Error);

    // dependent interval collapses to a point instead of throwing
    c[base + 0] = 1e-6; // c_L at its own lower bound
    const Interval collapsed = compute_bounds(c, base + 1, templ, eps);
    CHECK(collapsed.lo == collapsed.hi);
}

TEST_CASE("pso: proportional position remap") {
    const Interval old_b{0.0, 1.0};
    CHECK(clamp_position_proportional(0.1, old_b, {0.2, 1.0}) ==
          doctest::Approx(0.28).epsilon(1e-15));
    CHECK(clamp_position_proportional(0.0, old_b, {0.2, 1.0}) == 0.2);
    CHECK(clamp_position_proportional(1.0, old_b, {0.0, 0.8}) == 0.8);
    CHECK(clamp_position_proportional(0.5, old_b, {0.0, 1.0}) == 0.5);
    CHECK_THROWS_AS((void)clamp_position_proportional(0.5, {0.3, 0.3}, {0.0, 1.0}), Error);

    // endpoint exactness of the corrected lower map: old.lo -> new.lo and
    // old.hi -> old.hi
    for (const double lo_new : {0.05, 0.2, 0.45}) {
        CHECK(clamp_position_proportional(0.0, old_b, {lo_new, 1.0}) == lo_new);
        CHECK(clamp_position_proportional(1.0, old_b, {lo_new, 1.0}) == 1.0);
    }
    // remapped interiors land inside the new interval
    for (int k = 0; k < 1000; ++k) {
        const double x = k / 999.0;
        const double lo = clamp_position_proportional(x, old_b, {0.3, 0.9});
        CHECK(lo >= 0.3);
        CHECK(lo <= 0.9);
    }
}

TEST_CASE("pso: swarm initialization is feasible and reproducible") {
    PsoConfig config;
    config.swarm_size = 5;
    config.seed = 42;
    const FlcSpec templ = default_flc2();
    const Swarm swarm = init_swarm(config, templ);
    REQUIRE(swarm.particles.size() == 5);
    for (const auto& p : swarm.particles) {
        CHECK(chromosome_feasible(p.position, templ, config.epsilon_scale));
        CHECK_NOTHROW((void)decode_chromosome(p.position, templ));
        CHECK(validate_flc(decode_chromosome(p.position, templ)).empty());
        for (const double v : p.velocity)
            CHECK(v == 0.0);
        for (int d = 0; d < kChromosomeSize; ++d)
            CHECK(p.pbest[d] == p.position[d]);
    }
    const Swarm again = init_swarm(config, templ);
    for (std::size_t k = 0; k < swarm.particles.size(); ++k)
        for (int d = 0; d < kChromosomeSize; ++d)
            CHECK(swarm.particles[k].position[d] == again.particles[k].position[d]);
}

TEST_CASE("pso: chromosome codec round trip") {
    const FlcSpec f1 = default_flc1();
    const Chromosome c = encode_chromosome(f1);
    const FlcSpec back = decode_chromosome(c, f1);
    for (int v = 0; v < 3; ++v) {
        const auto& a = v == 0 ? f1.input1 : (v == 1 ? f1.input2 : f1.output);
        const auto& b = v == 0 ? back.input1 : (v == 1 ? back.input2 : back.output);
        for (int t = 0; t < 3; ++t) {
            CHECK(a.terms[t].a == b.terms[t].a);
            CHECK(a.terms[t].m == b.terms[t].m);
            CHECK(a.terms[t].b == b.terms[t].b);
        }
    }
    CHECK(validate_flc(back).empty());

    Chromosome bad = c;
    bad[3] = 1.5; // input1 c_M above c_H = 1? (input1 universe is [0,100]) use output block instead
    bad = c;
    bad[2 * kFreeParamsPerVariable + 3] = 1.5; // output c_M > c_H = 1 breaks constraint 4
    try {
        (void)decode_chromosome(bad, f1);
        FAIL("expected infeasible_chromosome");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::infeasible_chromosome);
    }
}

TEST_CASE("pso: constant fitness keeps the initial best and a flat trace") {
    PsoConfig config;
    config.swarm_size = 8;
    config.iterations = 6;
    config.seed = 7;
    const FlcSpec templ = default_flc2();
    const Swarm initial = init_swarm(config, templ);
    const auto result = run_pso(config, templ, [](const Chromosome&) { return 1.0; });
    REQUIRE(result.trace.size() == 7);
    for (const double f : result.trace)
        CHECK(f == 1.0);
    // ties keep the lowest index: gbest is particle 0's initial position
    for (int d = 0; d < kChromosomeSize; ++d)
        CHECK(result.best[d] == initial.particles[0].position[d]);
}

TEST_CASE("pso: inertia-only update leaves zero velocities at rest") {
    PsoConfig config;
    config.swarm_size = 4;
    config.iterations = 3;
    config.cognitive = 0.0;
    config.social = 0.0;
    config.inertia = 1.0;
    config.seed = 11;
    const FlcSpec templ = default_flc2();
    const Swarm initial = init_swarm(config, templ);
    SwarmObserver check_frozen = [&](int, const Swarm& s) {
        for (std::size_t k = 0; k < s.particles.size(); ++k)
            for (int d = 0; d < kChromosomeSize; ++d)
                CHECK(s.particles[k].position[d] == initial.particles[k].position[d]);
    };
    (void)run_pso(config, templ, [](const Chromosome& c) { return c[0]; }, check_frozen);
}

TEST_CASE("pso: trace is non-decreasing and runs are deterministic") {
    PsoConfig config;
    config.swarm_size = 12;
    config.iterations = 10;
    config.seed = 1234;
    const FlcSpec templ = default_flc2();
    const auto fitness = make_mean_output_fitness(templ);
    const auto a = run_pso(config, templ, fitness);
    const auto b = run_pso(config, templ, fitness);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
        CHECK(a.trace[k] == b.trace[k]);
        if (k > 0)
            CHECK(a.trace[k] >= a.trace[k - 1]);
    }
    for (int d = 0; d < kChromosomeSize; ++d)
        CHECK(a.best[d] == b.best[d]);
}

TEST_CASE("pso: feasibility holds after every iteration") {
    const FlcSpec templ = default_flc2();
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        PsoConfig config;
        config.swarm_size = 10;
        config.iterations = 20;
        config.seed = seed;
        int violations = 0;
        SwarmObserver observer = [&](int, const Swarm& s) {
            for (const auto& p : s.particles)
                if (!chromosome_feasible(p.position, templ, config.epsilon_scale))
                    ++violations;
        };
        (void)run_pso(config, templ, make_mean_output_fitness(templ), observer);
        CHECK(violations == 0);
    }
}

TEST_CASE("pso: concave quadratic is maximized") {
    // Feasible interior point of the unit-universe template, per variable.
    const std::array<double, 6> center_block{0.3, 0.15, 0.1, 0.8, 0.6, 0.75};
    Chromosome center;
    for (int v = 0; v < 3; ++v)
        for (int p = 0; p < 6; ++p)
            center[v * 6 + p] = center_block[static_cast<std::size_t>(p)];
    const FlcSpec templ = default_flc2();
    const FitnessFn fitness = [&](const Chromosome& c) {
        double s = 0.0;
        for (int d = 0; d < kChromosomeSize; ++d)
            s += (c[d] - center[d]) * (c[d] - center[d]);
        return -s;
    };
    PsoConfig config;
    config.swarm_size = 50;
    config.iterations = 20;
    config.seed = 99;
    const auto result = run_pso(config, templ, fitness);
    // optimum value is 0 at the (feasible) center
    CHECK(result.best_fitness > -1e-2);
}

TEST_CASE("pso: decoded outputs of a run are always valid controllers") {
    PsoConfig config;
    config.swarm_size = 15;
    config.iterations = 8;
    config.seed = 5150;
    const FlcSpec templ = default_flc2();
    const auto result = run_pso(config, templ, make_mean_output_fitness(templ));
    const FlcSpec tuned = decode_chromosome(result.best, templ);
    CHECK(validate_flc(tuned).empty());
}
