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

#include <random>

#include "lumloc/errors.hpp"
#include "lumloc/fuzzy.hpp"
#include "oracles.hpp"

using namespace lumloc;

TEST_CASE("fuzzy: triangular membership basics") {
    CHECK(mf_eval({0, 50, 100}, 50.0) == 1.0);
    CHECK(mf_eval({0, 50, 100}, 25.0) == 0.5);
    CHECK(mf_eval({50, 100, 100}, 40.0) == 0.0);
    CHECK(mf_eval({0, 0, 50}, 0.0) == 1.0); // left shoulder
    CHECK(mf_eval({0, 0, 50}, 50.0) == 0.0);
    CHECK(mf_eval({50, 100, 100}, 100.0) == 1.0); // right shoulder
    CHECK(mf_eval({0, 50, 100}, -1.0) == 0.0);
    CHECK(mf_eval({0, 50, 100}, 101.0) == 0.0);
}

TEST_CASE("fuzzy: membership stays within [0,1], peaks at m, zero outside") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int t = 0; t < 2000; ++t) {
        double p[3] = {u(rng), u(rng), u(rng)};
        std::sort(p, p + 3);
        if (t % 5 == 0)
            p[1] = p[0]; // force shoulders now and then
        if (t % 7 == 0)
            p[1] = p[2];
        const TriangularMf mf{p[0], p[1], p[2]};
        const double x = u(rng);
        const double v = mf_eval(mf, x);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(mf_eval(mf, mf.m) == 1.0);
        if (x < mf.a || x > mf.b)
            CHECK(mf_eval(mf, x) == 0.0);
        CHECK(v == doctest::Approx(oracle::tri(x, mf.a, mf.m, mf.b)).epsilon(1e-15));
    }
}

TEST_CASE("fuzzy: fuzzify against the first controller's Z% table") {
    const auto spec = default_flc1();
    const auto at50 = fuzzify(spec.input1, 50.0);
    CHECK(at50[0] == 0.0);
    CHECK(at50[1] == 1.0);
    CHECK(at50[2] == 0.0);
    const auto at75 = fuzzify(spec.input1, 75.0);
    CHECK(at75[0] == 0.0);
    CHECK(at75[1] == 0.5);
    CHECK(at75[2] == 0.5);
    const auto at0 = fuzzify(spec.input1, 0.0);
    CHECK(at0[0] == 1.0);
    CHECK(at0[1] == 0.0);
    CHECK(at0[2] == 0.0);
    // out-of-universe inputs clamp
    const auto clamped = fuzzify(spec.input1, 250.0);
    CHECK(clamped[2] == 1.0);
}

TEST_CASE("fuzzy: default tables form a partition of unity") {
    const auto f1 = default_flc1();
    const auto f2 = default_flc2();
    for (const auto* var : {&f1.input1, &f1.input2, &f2.input1, &f2.input2}) {
        for (int k = 0; k < 1000; ++k) {
            const double x = var->lo + (var->hi - var->lo) * k / 999.0;
            const auto mu = fuzzify(*var, x);
            CHECK(mu[0] + mu[1] + mu[2] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("fuzzy: worked inference examples from the rule tables") {
    const auto f1 = default_flc1();
    const auto f2 = default_flc2();
    CHECK(flc_infer(f1, 50.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(flc_infer(f1, 100.0, 0.0) == doctest::Approx(0.65).epsilon(1e-12));
    CHECK(flc_infer(f2, 1.0, 0.0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(flc_infer(f1, 75.0, 0.75) == doctest::Approx(0.7625).epsilon(1e-12));
}

TEST_CASE("fuzzy: peak input pairs reproduce every table cell exactly") {
    for (const auto& spec : {default_flc1(), default_flc2()}) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double x1 = spec.input1.terms[static_cast<std::size_t>(i)].m;
                const double x2 = spec.input2.terms[static_cast<std::size_t>(j)].m;
                CHECK(flc_infer(spec, x1, x2) ==
                      doctest::Approx(spec.rules.consequents[i][j]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("fuzzy: inference matches the brute-force oracle on random inputs") {
    // The oracle iterates rules in the opposite order, so agreement also
    // shows the weighted sum commutes.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const auto tnorm : {TNorm::min, TNorm::product}) {
        auto spec = default_flc2();
        spec.tnorm = tnorm;
        for (int t = 0; t < 300; ++t) {
            const double x1 = u01(rng);
            const double x2 = u01(rng);
            double expected = 0.0;
            REQUIRE(oracle::singleton_infer(spec, x1, x2, expected));
            CHECK(flc_infer(spec, x1, x2) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("fuzzy: singleton output bounded by fired consequents") {
    const auto spec = default_flc1();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double x1 = 100.0 * u01(rng);
        const double x2 = u01(rng);
        const auto mu1 = fuzzify(spec.input1, x1);
        const auto mu2 = fuzzify(spec.input2, x2);
        double lo = 1.0, hi = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (std::min(mu1[static_cast<std::size_t>(i)], mu2[static_cast<std::size_t>(j)]) >
                    0.0) {
                    lo = std::min(lo, spec.rules.consequents[i][j]);
                    hi = std::max(hi, spec.rules.consequents[i][j]);
                }
        const double out = flc_infer(spec, x1, x2);
        CHECK(out >= lo - 1e-12);
        CHECK(out <= hi + 1e-12);
    }
}

TEST_CASE("fuzzy: batch inference agrees bitwise with scalar calls") {
    const auto spec = default_flc2();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    std::vector<double> x1, x2;
    for (int t = 0; t < 37; ++t) {
        x1.push_back(u(rng));
        x2.push_back(u(rng));
    }
    std::vector<double> out(x1.size());
    flc_infer_batch(spec, x1, x2, out);
    for (std::size_t k = 0; k < x1.size(); ++k)
        CHECK(out[k] == flc_infer(spec, x1[k], x2[k]));
}

TEST_CASE("fuzzy: zero firing is an error for scalar inference, 0 in batch") {
    auto spec = default_flc2();
    // Shrink every input1 term into the lower half so x1 near 1 is uncovered.
    spec.input1.terms = {TriangularMf{0.0, 0.1, 0.2}, TriangularMf{0.1, 0.2, 0.3},
                         TriangularMf{0.2, 0.3, 0.4}};
    CHECK_THROWS_AS(flc_infer(spec, 0.9, 0.5), Error);
    try {
        flc_infer(spec, 0.9, 0.5);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::zero_firing);
    }
    const std::vector<double> x1{0.9}, x2{0.5};
    std::vector<double> out(1, -1.0);
    std::size_t zero_fired = 0;
    flc_infer_batch(spec, x1, x2, out, &zero_fired);
    CHECK(zero_fired == 1);
    CHECK(out[0] == 0.0);
}

TEST_CASE("fuzzy: validation accepts the default controllers") {
    CHECK(validate_flc(default_flc1()).empty());
    CHECK(validate_flc(default_flc2()).empty());
}

TEST_CASE("fuzzy: validation reports ordering violations") {
    auto spec = default_flc2();
    spec.input1.terms[0].b = 0.7; // c_L > b_M = 0.5 breaks constraint 1
    auto violations = validate_flc(spec);
    REQUIRE(!violations.empty());
    bool mentions_rule1 = false;
    for (const auto& v : violations)
        mentions_rule1 = mentions_rule1 || v.find("constraint 1") != std::string::npos;
    CHECK(mentions_rule1);

    spec = default_flc2();
    spec.input2.terms[1].a = 0.6; // a_M > c_L = 0.5 breaks constraint 3
    violations = validate_flc(spec);
    bool mentions_rule3 = false;
    for (const auto& v : violations)
        mentions_rule3 = mentions_rule3 || v.find("constraint 3") != std::string::npos;
    CHECK(mentions_rule3);

    spec = default_flc2();
    spec.rules.consequents[2][2] = 1.5;
    CHECK(!validate_flc(spec).empty());

    spec = default_flc2();
    spec.input1.terms[2].b = 1.4; // escapes the universe
    CHECK(!validate_flc(spec).empty());
}

TEST_CASE("fuzzy: default table lookups") {
    const auto f1 = default_flc1();
    CHECK(f1.input1.terms[1].a == 0.0);
    CHECK(f1.input1.terms[1].m == 50.0);
    CHECK(f1.input1.terms[1].b == 100.0);
    const auto f2 = default_flc2();
    CHECK(f2.rules.at(TermIndex::medium, TermIndex::high) == 0.9);
    CHECK(f2.rules.at(TermIndex::low, TermIndex::low) == 0.001);
}

namespace {

// Midpoint-rule moments of min(mu, h) for the clipped-centroid check.
double numeric_clipped_centroid(const TriangularMf& mf, double h) {
    const int n = 2000000;
    const double width = mf.b - mf.a;
    double m0 = 0.0, m1 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = mf.a + width * (k + 0.5) / n;
        const double mu = std::min(oracle::tri(x, mf.a, mf.m, mf.b), h);
        m0 += mu;
        m1 += mu * x;
    }
    return m1 / m0;
}

} // namespace

TEST_CASE("fuzzy: clipped centroid matches quadrature") {
    const TriangularMf shapes[] = {{0.0, 1.0, 2.0}, {0.0, 0.0, 1.0}, {0.5, 1.0, 1.0},
                                   {0.2, 0.3, 0.9}};
    for (const auto& mf : shapes)
        for (const double h : {0.25, 0.5, 1.0})
            CHECK(clipped_centroid(mf, h) ==
                  doctest::Approx(numeric_clipped_centroid(mf, h)).epsilon(1e-5));
    // degenerate spike
    CHECK(clipped_centroid({0.4, 0.4, 0.4}, 0.7) == 0.4);
}

TEST_CASE("fuzzy: clipped-mode inference at the top corner") {
    auto spec = default_flc2();
    spec.mode = InferenceMode::mamdani_clipped;
    // Only the High x High rule fires at the peaks; its consequent maps to the
    // High output term, whose full centroid is 5/6.
    CHECK(flc_infer(spec, 1.0, 1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    // Batch and scalar agree in clipped mode too.
    const std::vector<double> x1{0.3, 0.7, 1.0}, x2{0.2, 0.9, 1.0};
    std::vector<double> out(3);
    flc_infer_batch(spec, x1, x2, out);
    for (std::size_t k = 0; k < out.size(); ++k)
        CHECK(out[k] == flc_infer(spec, x1[k], x2[k]));
}

TEST_CASE("fuzzy: consequent thresholds pick output terms") {
    CHECK(consequent_term_label(0.0) == TermIndex::low);
    CHECK(consequent_term_label(0.3) == TermIndex::low);
    CHECK(consequent_term_label(0.45) == TermIndex::medium);
    CHECK(consequent_term_label(0.65) == TermIndex::medium);
    CHECK(consequent_term_label(0.67) == TermIndex::high);
    CHECK(consequent_term_label(1.0) == TermIndex::high);
}
