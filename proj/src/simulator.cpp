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

#include "lumloc/simulator.hpp"

#include <cmath>
#include "detail/strjoin.hpp"

#include "lumloc/baselines.hpp"
#include "lumloc/errors.hpp"
#include "lumloc/rng.hpp"

namespace lumloc {

namespace {

// Substream roles; keep distinct so calibration never shares draws with
// online dwells.
constexpr std::uint64_t kRoleDwell = 0x4457454c4cULL;
constexpr std::uint64_t kRoleCalibration = 0x43414c4942ULL;

} // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::fuzzy: return "fuzzy";
    case Algorithm::minmax: return "minmax";
    case Algorithm::max_likelihood: return "ml";
    case Algorithm::trilateration: return "trilateration";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "fuzzy")
        return Algorithm::fuzzy;
    if (name == "minmax")
        return Algorithm::minmax;
    if (name == "ml")
        return Algorithm::max_likelihood;
    if (name == "trilateration")
        return Algorithm::trilateration;
    throw Error(Errc::invalid_config, detail::strjoin("unknown algorithm: ", name));
}

Scenario generate_scenario(double room_width, double room_height, int n_anchors, int n_positions,
                           const NoiseModel& noise, std::uint64_t seed,
                           PathLossModel true_model) {
    if (!(room_width > 0.0 && room_height > 0.0))
        throw Error(Errc::invalid_room, "room sides must be positive");
    if (n_anchors < 1)
        throw Error(Errc::invalid_room, "need at least one anchor");
    if (n_positions < 0)
        throw Error(Errc::invalid_room, "position count must be >= 0");

    Scenario s;
    s.room_width = room_width;
    s.room_height = room_height;
    s.noise = noise;
    s.seed = seed;

    const int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(n_anchors))));
    const int cols = (n_anchors + rows - 1) / rows;
    for (int a = 0; a < n_anchors; ++a) {
        const int row = a / cols;
        const int col = a % cols;
        ScenarioAnchor anchor;
        anchor.id = detail::strjoin("a", a + 1);
        anchor.position = {room_width * (col + 0.5) / cols, room_height * (row + 0.5) / rows};
        anchor.model = true_model;
        s.anchors.push_back(std::move(anchor));
    }

    Rng rng(derive_seed(seed, 0x504f53ULL));
    for (int p = 0; p < n_positions; ++p)
        s.test_positions.push_back(
            {rng.uniform(0.0, room_width), rng.uniform(0.0, room_height)});
    return s;
}

std::vector<RssiSample> sample_rssi(const Scenario& scenario, const Vec2& position,
                                    int n_samples, std::uint64_t stream_key) {
    std::vector<RssiSample> samples;
    samples.reserve(scenario.anchors.size() * static_cast<std::size_t>(n_samples));
    for (std::size_t ai = 0; ai < scenario.anchors.size(); ++ai) {
        const auto& anchor = scenario.anchors[ai];
        const double w = euclidean(position, anchor.position);
        if (!(w > 0.0))
            throw Error(Errc::zero_distance,
                        detail::strjoin("position coincides with anchor ", anchor.id));
        const double base = anchor.model.z * std::log10(w) + anchor.model.k;
        Rng rng(derive_seed(scenario.seed, kRoleDwell, stream_key, ai));
        for (int k = 0; k < n_samples; ++k) {
            // Fixed draw layout per sample: gaussian (2), bernoulli (1),
            // attenuation (1).
            const double nse = rng.gaussian(0.0, scenario.noise.sigma_db);
            const bool hit = rng.bernoulli(scenario.noise.p_multipath);
            const double att =
                rng.uniform(scenario.noise.attenuation_lo_db, scenario.noise.attenuation_hi_db);
            samples.push_back(
                RssiSample{anchor.id, base + nse - (hit ? att : 0.0), k});
        }
    }
    return samples;
}

std::vector<AnchorCalibration> simulate_calibration(const Scenario& scenario,
                                                    int calibration_distances) {
    if (calibration_distances < 2)
        throw Error(Errc::invalid_config, "need at least two calibration distances");
    std::vector<AnchorCalibration> sets;
    sets.reserve(scenario.anchors.size());
    for (std::size_t ai = 0; ai < scenario.anchors.size(); ++ai) {
        const auto& anchor = scenario.anchors[ai];
        AnchorCalibration set;
        set.id = anchor.id;
        set.position = anchor.position;
        for (int k = 0; k < calibration_distances; ++k) {
            const double d = static_cast<double>(k + 1);
            const double base = anchor.model.z * std::log10(d) + anchor.model.k;
            Rng rng(derive_seed(scenario.seed, kRoleCalibration, ai,
                                static_cast<std::uint64_t>(k)));
            std::vector<RssiSample> dwell;
            dwell.reserve(static_cast<std::size_t>(scenario.samples_per_position));
            for (int s = 0; s < scenario.samples_per_position; ++s) {
                const double nse = rng.gaussian(0.0, scenario.noise.sigma_db);
                const bool hit = rng.bernoulli(scenario.noise.p_multipath);
                const double att = rng.uniform(scenario.noise.attenuation_lo_db,
                                               scenario.noise.attenuation_hi_db);
                dwell.push_back(RssiSample{anchor.id, base + nse - (hit ? att : 0.0), s});
            }
            // Same measurement chain as the online stage, so selection bias
            // from keeping the strongest quartile calibrates itself away.
            const auto kept = filter_samples(dwell);
            double sum = 0.0;
            for (const auto& s : kept)
                sum += s.rssi_db;
            set.points.push_back(
                CalibrationPoint{d, sum / static_cast<double>(kept.size())});
        }
        sets.push_back(std::move(set));
    }
    return sets;
}

std::vector<double> ExperimentResult::errors() const {
    std::vector<double> e;
    e.reserve(outcomes.size());
    for (const auto& o : outcomes)
        e.push_back(o.error);
    return e;
}

ExperimentResult run_experiment(const Scenario& scenario, const ExperimentConfig& config,
                                const FlcSpec& flc1, const FlcSpec& flc2) {
    ExperimentResult result;
    result.anchors = offline_calibrate(simulate_calibration(scenario, config.calibration_distances),
                                       flc1);
    const GridMap grid = GridMap::cover(scenario.room_width, scenario.room_height,
                                        config.cell_size);

    for (std::size_t pi = 0; pi < scenario.test_positions.size(); ++pi) {
        const Vec2 truth = scenario.test_positions[pi];
        const auto samples =
            sample_rssi(scenario, truth, scenario.samples_per_position, pi);

        Vec2 estimate;
        if (config.algorithm == Algorithm::fuzzy) {
            estimate = locate(grid, result.anchors, samples, flc2).position;
        } else {
            // Shared front end, matching locate(): per-anchor filtering, then
            // average and invert each anchor's channel.
            std::vector<double> distances;
            distances.reserve(result.anchors.size());
            for (const auto& a : result.anchors) {
                std::vector<RssiSample> own;
                for (const auto& s : samples)
                    if (s.anchor_id == a.id)
                        own.push_back(s);
                if (own.empty())
                    throw Error(Errc::no_usable_samples,
                                detail::strjoin("anchor ", a.id, " has no samples"));
                const auto kept = filter_samples(own);
                double sum = 0.0;
                for (const auto& s : kept)
                    sum += s.rssi_db;
                distances.push_back(
                    estimate_distance(a.model, sum / static_cast<double>(kept.size())));
            }
            switch (config.algorithm) {
            case Algorithm::minmax:
                estimate = minmax_locate(result.anchors, distances);
                break;
            case Algorithm::trilateration:
                estimate = trilaterate(result.anchors, distances);
                break;
            default:
                estimate = ml_locate(grid, result.anchors, distances).position;
                break;
            }
        }
        result.outcomes.push_back(PositionOutcome{truth, estimate, euclidean(truth, estimate)});
    }
    return result;
}

} // namespace lumloc
