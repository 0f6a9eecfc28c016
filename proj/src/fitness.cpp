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

#include "lumloc/fitness.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "lumloc/errors.hpp"
#include "lumloc/kernels.hpp"

namespace lumloc {

namespace {

// Everything about the scenario that does not depend on controller 2.
struct PipelineCache {
    GridMap grid;
    std::vector<Vec2> truths;
    std::vector<double> reliability;            // per anchor
    std::vector<std::vector<double>> dist_grid; // per anchor: cell distances
    std::vector<std::vector<double>> w_hat;     // per position x anchor
    std::vector<std::vector<double>> proximity; // per position x anchor
};

PipelineCache build_cache(const Scenario& scenario, const FlcSpec& flc1,
                          const ExperimentConfig& config) {
    PipelineCache cache;
    const auto anchors =
        offline_calibrate(simulate_calibration(scenario, config.calibration_distances), flc1);
    cache.grid = GridMap::cover(scenario.room_width, scenario.room_height, config.cell_size);
    cache.truths = scenario.test_positions;

    std::vector<double> cx(cache.grid.cell_count()), cy(cache.grid.cell_count());
    {
        std::size_t idx = 0;
        const double s = cache.grid.cell_size;
        for (int i = 1; i <= cache.grid.nx; ++i)
            for (int j = 1; j <= cache.grid.ny; ++j, ++idx) {
                cx[idx] = static_cast<double>(i) * s - s / 2.0;
                cy[idx] = static_cast<double>(j) * s - s / 2.0;
            }
    }
    for (const auto& a : anchors) {
        cache.reliability.push_back(a.reliability);
        std::vector<double> dist(cache.grid.cell_count());
        kernels::distance_batch(cx.data(), cy.data(), dist.size(), a.position.x, a.position.y,
                                dist.data());
        cache.dist_grid.push_back(std::move(dist));
    }

    for (std::size_t pi = 0; pi < scenario.test_positions.size(); ++pi) {
        const auto samples = sample_rssi(scenario, scenario.test_positions[pi],
                                         scenario.samples_per_position, pi);
        std::vector<double> rssi;
        for (const auto& a : anchors) {
            std::vector<RssiSample> own;
            for (const auto& s : samples)
                if (s.anchor_id == a.id)
                    own.push_back(s);
            const auto kept = filter_samples(own);
            double sum = 0.0;
            for (const auto& s : kept)
                sum += s.rssi_db;
            rssi.push_back(sum / static_cast<double>(kept.size()));
        }
        std::vector<double> w_hat, prox;
        for (std::size_t n = 0; n < anchors.size(); ++n) {
            w_hat.push_back(estimate_distance(anchors[n].model, rssi[n]));
            prox.push_back(proximity_index(rssi[n], rssi));
        }
        cache.w_hat.push_back(std::move(w_hat));
        cache.proximity.push_back(std::move(prox));
    }
    return cache;
}

} // namespace

FitnessFn make_neg_mean_error_fitness(const Scenario& scenario, const FlcSpec& flc1,
                                      const FlcSpec& flc2_template,
                                      const ExperimentConfig& config) {
    auto cache = std::make_shared<const PipelineCache>(build_cache(scenario, flc1, config));
    return [cache, flc2_template](const Chromosome& c) {
        const FlcSpec flc2 = decode_chromosome(c, flc2_template);
        const std::size_t n_anchors = cache->reliability.size();
        std::vector<double> weights(n_anchors);
        std::vector<double> w(cache->grid.cell_count());
        double total_error = 0.0;
        for (std::size_t pi = 0; pi < cache->truths.size(); ++pi) {
            // Uncovered inputs contribute weight 0, as in locate().
            flc_infer_batch(flc2, cache->reliability, cache->proximity[pi], weights);
            bool any = false;
            for (const double iw : weights)
                any = any || iw != 0.0;
            if (!any)
                return -std::numeric_limits<double>::infinity();
            std::fill(w.begin(), w.end(), 0.0);
            for (std::size_t n = 0; n < n_anchors; ++n)
                kernels::weighted_sq_residual_accumulate(w.data(), cache->dist_grid[n].data(),
                                                         w.size(), cache->w_hat[pi][n],
                                                         weights[n]);
            const GridField field{cache->grid, w};
            const auto [i, j] = argmin_cell(field);
            const Vec2 est = cell_center(cache->grid, i, j);
            total_error += euclidean(est, cache->truths[pi]);
        }
        return -total_error / static_cast<double>(cache->truths.size());
    };
}

} // namespace lumloc
