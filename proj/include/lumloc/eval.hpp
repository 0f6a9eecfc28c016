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
// Evaluation metrics: average/median error and standard deviation, the
// empirical CDF of localization error with confidence-level quantiles, and
// the beacon-count sweep.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lumloc/simulator.hpp"

namespace lumloc {

struct ErrorStats {
    double ae = 0.0; // mean error
    double me = 0.0; // median error (nearest-rank)
    double sd = 0.0; // sample standard deviation (n-1; 0 for a single value)
};

/// Throws Errc::empty_input on empty data.
ErrorStats compute_stats(std::span<const double> errors);

/// Step-function CDF over non-negative errors.
struct EmpiricalCdf {
    std::vector<double> sorted_errors;

    /// F(e): fraction of errors <= e.
    double value(double e) const;
    std::size_t size() const { return sorted_errors.size(); }
};

EmpiricalCdf empirical_cdf(std::span<const double> errors);

/// Error at confidence level p in (0, 1], by nearest rank. quantile(0.5)
/// equals ErrorStats::me by construction, and quantile(1.0) is the maximum.
double quantile(const EmpiricalCdf& cdf, double p);

struct SweepRow {
    int n_anchors = 0;
    Algorithm algorithm = Algorithm::fuzzy;
    double mean_error = 0.0;
};

/// For each anchor count, regenerate the placement per seed (rooms, noise,
/// dwell length and position count come from the template scenario), run the
/// experiment for every algorithm, and average the error across seeds and
/// positions. Rows come out ordered by (count, algorithm).
std::vector<SweepRow> beacon_sweep(const Scenario& template_scenario,
                                   std::span<const int> counts,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const std::uint64_t> seeds,
                                   const ExperimentConfig& config, const FlcSpec& flc1,
                                   const FlcSpec& flc2);

} // namespace lumloc
