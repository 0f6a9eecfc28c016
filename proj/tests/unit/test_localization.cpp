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
#include <random>

#include "lumloc/errors.hpp"
#include "lumloc/localization.hpp"
#include "oracles.hpp"

using namespace lumloc;

namespace {

// Exact calibration points for a target model; the fit recovers it.
std::vector<CalibrationPoint> points_for(const PathLossModel& m) {
    std::vector<CalibrationPoint> pts;
    for (const double d : {1.0, 10.0})
        pts.push_back({d, m.z * std::log10(d) + m.k});
    return pts;
}

Anchor make_anchor(std::string id, Vec2 pos, PathLossModel model = {-20.0, -40.0},
                   double reliability = 1.0) {
    Anchor a;
    a.id = std::move(id);
    a.position = pos;
    a.model = model;
    a.reliability = reliability;
    return a;
}

// Noiseless dwell: every sample equals the exact model prediction.
std::vector<RssiSample> exact_samples(std::span<const Anchor> anchors, Vec2 target,
                                      int per_anchor = 5) {
    std::vector<RssiSample> samples;
    for (const auto& a : anchors) {
        const double w = euclidean(target, a.position);
        const double rssi = a.model.z * std::log10(w) + a.model.k;
        for (int k = 0; k < per_anchor; ++k)
            samples.push_back({a.id, rssi, k});
    }
    return samples;
}

} // namespace

TEST_CASE("localization: grid geometry") {
    const GridMap grid = GridMap::cover(10.0, 10.0, 1.0);
    CHECK(grid.nx == 10);
    CHECK(grid.ny == 10);
    const auto c11 = cell_center(grid, 1, 1);
    CHECK(c11.x == 0.5);
    CHECK(c11.y == 0.5);
    const auto c10 = cell_center(grid, 10, 1);
    CHECK(c10.x == 9.5);
    CHECK(c10.y == 0.5);
    CHECK_THROWS_AS((void)cell_center(grid, 0, 1), Error);
    CHECK_THROWS_AS((void)cell_center(grid, 1, 11), Error);

    const GridMap odd = GridMap::cover(10.5, 3.2, 1.0);
    CHECK(odd.nx == 11);
    CHECK(odd.ny == 4);
}

TEST_CASE("localization: offline calibration scores against the medians") {
    const FlcSpec flc1 = default_flc1();
    std::vector<AnchorCalibration> sets;
    for (const double z : {-19.0, -20.0, -21.0})
        sets.push_back({"a" + std::to_string(sets.size() + 1), Vec2{0.0, 0.0},
                        points_for({z, -40.0})});
    const auto anchors = offline_calibrate(sets, flc1);
    REQUIRE(anchors.size() == 3);
    CHECK(anchors[0].z_score == doctest::Approx(95.0).epsilon(1e-9));
    CHECK(anchors[1].z_score == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(anchors[2].z_score == doctest::Approx(95.0).epsilon(1e-9));
    for (const auto& a : anchors) {
        CHECK(a.k_score == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(a.reliability ==
              doctest::Approx(flc_infer(flc1, a.z_score, a.k_score)).epsilon(1e-12));
    }

    const std::vector<AnchorCalibration> single{{"a1", Vec2{0, 0}, points_for({-18.0, -35.0})}};
    const auto lone = offline_calibrate(single, flc1);
    CHECK(lone[0].z_score == 100.0);
    CHECK(lone[0].k_score == 1.0);

    CHECK_THROWS_AS((void)offline_calibrate(std::vector<AnchorCalibration>{}, flc1), Error);
}

TEST_CASE("localization: error map per anchor") {
    const GridMap grid = GridMap::cover(3.0, 3.0, 1.0);
    const auto anchor = make_anchor("a1", {0.5, 0.5});
    const auto map = build_error_map(grid, anchor, 0.0);
    CHECK(map.at(1, 1) == 0.0);
    CHECK(map.at(1, 2) == 1.0);
    for (const double v : map.values)
        CHECK(v >= 0.0);
    // w_hat equal to the true distance zeroes exactly the matching cells
    const double d = euclidean(cell_center(grid, 3, 2), anchor.position);
    const auto map2 = build_error_map(grid, anchor, d);
    CHECK(map2.at(3, 2) == 0.0);
    CHECK_THROWS_AS((void)build_error_map(grid, anchor, -1.0), Error);
}

TEST_CASE("localization: total reliability reproduces controller-2 cells") {
    const FlcSpec flc2 = default_flc2();
    CHECK(total_reliability(make_anchor("a", {0, 0}, {-20, -40}, 1.0), 1.0, flc2) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_reliability(make_anchor("a", {0, 0}, {-20, -40}, 0.0), 1e-12, flc2) ==
          doctest::Approx(0.001).epsilon(1e-9));
    CHECK(total_reliability(make_anchor("a", {0, 0}, {-20, -40}, 0.5), 0.5, flc2) ==
          doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("localization: aggregate map") {
    const GridMap grid = GridMap::cover(5.0, 5.0, 1.0);
    const std::vector<Anchor> anchors{make_anchor("a1", {2.5, 2.5})};
    const std::vector<double> w_hat{1.5};

    const auto w1 = aggregate_map(grid, anchors, w_hat, std::vector<double>{1.0});
    const auto emap = build_error_map(grid, anchors[0], w_hat[0]);
    for (std::size_t k = 0; k < w1.values.size(); ++k)
        CHECK(w1.values[k] == emap.values[k] * emap.values[k]);

    const auto w0 = aggregate_map(grid, anchors, w_hat, std::vector<double>{0.0});
    for (const double v : w0.values)
        CHECK(v == 0.0);

    CHECK_THROWS_AS((void)aggregate_map(grid, anchors, w_hat, std::vector<double>{1.0, 2.0}),
                    Error);

    // three non-collinear anchors with exact distances: unique zero at the
    // target cell, found by exhaustive scan
    const GridMap g10 = GridMap::cover(10.0, 10.0, 1.0);
    const std::vector<Anchor> tri{make_anchor("a1", {0.5, 0.5}), make_anchor("a2", {9.5, 0.5}),
                                  make_anchor("a3", {0.5, 9.5})};
    const Vec2 target = cell_center(g10, 7, 4);
    std::vector<double> exact;
    for (const auto& a : tri)
        exact.push_back(euclidean(target, a.position));
    const auto w = aggregate_map(g10, tri, exact, std::vector<double>(3, 1.0));
    const auto [bi, bj] = argmin_cell(w);
    CHECK(bi == 7);
    CHECK(bj == 4);
    CHECK(w.at(7, 4) == doctest::Approx(0.0).epsilon(1e-18));
}

TEST_CASE("localization: noiseless corner-anchor fix") {
    const GridMap grid = GridMap::cover(10.0, 10.0, 1.0);
    const std::vector<Anchor> anchors{
        make_anchor("a1", {0.0, 0.0}), make_anchor("a2", {10.0, 0.0}),
        make_anchor("a3", {0.0, 10.0}), make_anchor("a4", {10.0, 10.0})};
    const Vec2 target{5.5, 5.5};
    const auto fix = locate(grid, anchors, exact_samples(anchors, target), default_flc2());
    CHECK(fix.i == 6);
    CHECK(fix.j == 6);
    CHECK(fix.position.x == 5.5);
    CHECK(fix.position.y == 5.5);
    CHECK(fix.per_anchor.size() == 4);
}

TEST_CASE("localization: single-cell grid and tie breaking") {
    const GridMap one = GridMap::cover(1.0, 1.0, 1.0);
    const std::vector<Anchor> anchors{make_anchor("a1", {0.25, 0.25})};
    const auto fix = locate(one, anchors, exact_samples(anchors, {0.9, 0.9}), default_flc2());
    CHECK(fix.i == 1);
    CHECK(fix.j == 1);
    CHECK(fix.position.x == 0.5);

    // one anchor at the middle cell of a 3x1 strip, estimated distance 1:
    // cells 1 and 3 tie at zero and the lexicographically smaller wins
    const GridMap strip{1.0, 3, 1};
    const std::vector<Anchor> mid{make_anchor("m", {1.5, 0.5})};
    std::vector<RssiSample> samples;
    for (int k = 0; k < 4; ++k)
        samples.push_back({"m", -40.0, k}); // estimate_distance -> exactly 1.0
    const auto tie = locate(strip, mid, samples, default_flc2());
    CHECK(tie.i == 1);
    CHECK(tie.j == 1);
}

TEST_CASE("localization: weight scaling leaves the argmin unchanged") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const GridMap grid = GridMap::cover(8.0, 6.0, 0.5);
    for (int t = 0; t < 50; ++t) {
        std::vector<Anchor> anchors;
        std::vector<double> w_hat, i_n;
        const int n = 3 + static_cast<int>(rng() % 5);
        for (int k = 0; k < n; ++k) {
            anchors.push_back(make_anchor("a" + std::to_string(k),
                                          {8.0 * u01(rng), 6.0 * u01(rng)}));
            w_hat.push_back(10.0 * u01(rng));
            i_n.push_back(0.05 + u01(rng));
        }
        const auto base = argmin_cell(aggregate_map(grid, anchors, w_hat, i_n));
        std::vector<double> scaled = i_n;
        for (double& v : scaled)
            v *= 3.7;
        const auto same = argmin_cell(aggregate_map(grid, anchors, w_hat, scaled));
        CHECK(base == same);
    }
}

TEST_CASE("localization: every cell-center target is recovered noiselessly") {
    const GridMap grid = GridMap::cover(6.0, 6.0, 1.0);
    const std::vector<Anchor> anchors{make_anchor("a1", {1.0, 1.2}),
                                      make_anchor("a2", {5.0, 1.0}),
                                      make_anchor("a3", {3.0, 5.5})};
    for (int i = 1; i <= grid.nx; ++i) {
        for (int j = 1; j <= grid.ny; ++j) {
            const Vec2 target = cell_center(grid, i, j);
            const auto fix =
                locate(grid, anchors, exact_samples(anchors, target), default_flc2());
            CHECK(fix.i == i);
            CHECK(fix.j == j);
        }
    }
}

TEST_CASE("localization: matches the naive triple-loop oracle on noisy instances") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const FlcSpec flc2 = default_flc2();
    for (int t = 0; t < 40; ++t) {
        const int nx = 4 + static_cast<int>(rng() % 17);
        const int ny = 4 + static_cast<int>(rng() % 17);
        const double s = 0.5 + u01(rng);
        const GridMap grid{s, nx, ny};
        const int n_anchors = 2 + static_cast<int>(rng() % 9);
        std::vector<Anchor> anchors;
        for (int k = 0; k < n_anchors; ++k) {
            auto a = make_anchor("a" + std::to_string(k),
                                 {nx * s * u01(rng), ny * s * u01(rng)},
                                 {-25.0 + 10.0 * u01(rng), -45.0 + 10.0 * u01(rng)});
            a.reliability = u01(rng);
            anchors.push_back(a);
        }
        std::vector<RssiSample> samples;
        for (const auto& a : anchors) {
            const int n_samples = 3 + static_cast<int>(rng() % 28);
            for (int k = 0; k < n_samples; ++k) {
                const double w = std::max(0.3, euclidean(a.position, {nx * s / 2, ny * s / 2}));
                const double rssi =
                    a.model.z * std::log10(w) + a.model.k + 3.0 * (u01(rng) - 0.5);
                samples.push_back({a.id, rssi, k});
            }
        }
        const auto fix = locate(grid, anchors, samples, flc2);
        const auto expected = oracle::locate(nx, ny, s, anchors, samples, flc2);
        CHECK(fix.i == expected.i);
        CHECK(fix.j == expected.j);
        CHECK(fix.position.x == expected.x);
        CHECK(fix.position.y == expected.y);
        CHECK(fix.w_min >= 0.0);
    }
}

TEST_CASE("localization: locate error cases") {
    const GridMap grid = GridMap::cover(4.0, 4.0, 1.0);
    const std::vector<Anchor> anchors{make_anchor("a1", {1.0, 1.0}),
                                      make_anchor("a2", {3.0, 1.0})};
    try {
        (void)locate(grid, anchors, std::vector<RssiSample>{}, default_flc2());
        FAIL("expected no_usable_samples");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::no_usable_samples);
    }
    const std::vector<RssiSample> stray{{"ghost", -50.0, 0}};
    try {
        (void)locate(grid, anchors, stray, default_flc2());
        FAIL("expected unknown_anchor");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_anchor);
    }
    // a controller that covers nothing zeroes every weight
    auto flc2 = default_flc2();
    flc2.input1.terms = {TriangularMf{0.0, 0.0, 1e-9}, TriangularMf{0.0, 0.0, 1e-9},
                         TriangularMf{0.0, 0.0, 1e-9}};
    const auto samples = exact_samples(anchors, {2.0, 2.0});
    try {
        (void)locate(grid, anchors, samples, flc2);
        FAIL("expected all_weights_zero");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::all_weights_zero);
    }
}
