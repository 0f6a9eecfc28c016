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
// Seeded room simulator standing in for a physical deployment: ceiling-grid
// beacon placement, log-distance channels, Gaussian dB noise and occasional
// multipath attenuation (which only ever weakens a signal). All randomness
// comes from substreams keyed on (seed, role, position, anchor), so outputs
// are pure functions of the scenario.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lumloc/channel.hpp"
#include "lumloc/fuzzy.hpp"
#include "lumloc/localization.hpp"

namespace lumloc {

struct NoiseModel {
    double sigma_db = 1.0;
    double p_multipath = 0.2;
    double attenuation_lo_db = 2.0;
    double attenuation_hi_db = 10.0;
};

struct ScenarioAnchor {
    std::string id;
    Vec2 position;
    PathLossModel model; // ground-truth channel
};

struct Scenario {
    double room_width = 10.0;
    double room_height = 10.0;
    std::vector<ScenarioAnchor> anchors;
    NoiseModel noise;
    std::vector<Vec2> test_positions;
    int samples_per_position = 30;
    std::uint64_t seed = 0;
};

/// Deterministic scenario builder. Anchors go on a near-square ceiling grid
/// (rows = floor(sqrt(n)), cols = ceil(n / rows), centers inset by half a
/// pitch); test positions are sampled uniformly inside the room from the
/// seed. Every anchor carries `true_model`.
Scenario generate_scenario(double room_width, double room_height, int n_anchors, int n_positions,
                           const NoiseModel& noise, std::uint64_t seed,
                           PathLossModel true_model = {-20.0, -40.0});

/// One dwell at `position`: n_samples per anchor, anchor-major order.
///   rssi = Z*log10(w) + K + N(0, sigma) - Bernoulli(p) * U(attenuation)
/// Deterministic per (scenario.seed, stream_key, anchor, sample index).
/// Throws Errc::zero_distance if the position coincides with an anchor.
std::vector<RssiSample> sample_rssi(const Scenario& scenario, const Vec2& position,
                                    int n_samples, std::uint64_t stream_key);

enum class Algorithm { fuzzy, minmax, max_likelihood, trilateration };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::fuzzy;
    double cell_size = 1.0;
    /// Calibration dwells at 1..n meters from each anchor, each dwell using
    /// scenario.samples_per_position samples pushed through the same
    /// filter-and-average chain as the online stage.
    int calibration_distances = 5;
};

struct PositionOutcome {
    Vec2 truth;
    Vec2 estimate;
    double error = 0.0;
};

struct ExperimentResult {
    std::vector<Anchor> anchors; // calibrated anchors with reliability
    std::vector<PositionOutcome> outcomes;
    std::vector<double> errors() const;
};

/// Calibrate every anchor from simulated dwells, then localize every test
/// position with the selected algorithm. The three baselines consume exactly
/// the per-anchor distance estimates the fuzzy pipeline would use.
ExperimentResult run_experiment(const Scenario& scenario, const ExperimentConfig& config,
                                const FlcSpec& flc1, const FlcSpec& flc2);

/// Per-anchor calibration dwells for the scenario, as consumed by
/// offline_calibrate. Exposed so tuning objectives can reuse the exact
/// offline stage of run_experiment.
std::vector<AnchorCalibration> simulate_calibration(const Scenario& scenario,
                                                    int calibration_distances);

} // namespace lumloc
