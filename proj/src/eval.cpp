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

#include "lumloc/eval.hpp"

#include <algorithm>
#include <cmath>

#include "lumloc/errors.hpp"
#include "lumloc/stats.hpp"

namespace lumloc {

ErrorStats compute_stats(std::span<const double> errors) {
    if (errors.empty())
        throw Error(Errc::empty_input, "no errors to summarize");
    const auto n = static_cast<double>(errors.size());
    double sum = 0.0;
    for (const double e : errors)
        sum += e;
    const double mean = sum / n;
    double ss = 0.0;
    for (const double e : errors)
        ss += (e - mean) * (e - mean);
    ErrorStats stats;
    stats.ae = mean;
    stats.me = nearest_rank_median(errors);
    stats.sd = errors.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return stats;
}

EmpiricalCdf empirical_cdf(std::span<const double> errors) {
    if (errors.empty())
        throw Error(Errc::empty_input, "no errors for a CDF");
    for (const double e : errors)
        if (e < 0.0)
            throw Error(Errc::negative_distance, "localization errors must be >= 0");
    EmpiricalCdf cdf;
    cdf.sorted_errors.assign(errors.begin(), errors.end());
    std::sort(cdf.sorted_errors.begin(), cdf.sorted_errors.end());
    return cdf;
}

double EmpiricalCdf::value(double e) const {
    const auto it = std::upper_bound(sorted_errors.begin(), sorted_errors.end(), e);
    return static_cast<double>(it - sorted_errors.begin()) /
           static_cast<double>(sorted_errors.size());
}

double quantile(const EmpiricalCdf& cdf, double p) {
    return nearest_rank_quantile(cdf.sorted_errors, p);
}

std::vector<SweepRow> beacon_sweep(const Scenario& template_scenario,
                                   std::span<const int> counts,
                                   std::span<const Algorithm> algorithms,
                                   std::span<const std::uint64_t> seeds,
                                   const ExperimentConfig& config, const FlcSpec& flc1,
                                   const FlcSpec& flc2) {
    if (counts.empty())
        throw Error(Errc::empty_input, "no anchor counts to sweep");
    if (seeds.empty())
        throw Error(Errc::empty_input, "no seeds to sweep");

    std::vector<SweepRow> rows;
    for (const int count : counts) {
        std::vector<std::vector<double>> per_algo(algorithms.size());
        for (const std::uint64_t seed : seeds) {
            const Scenario scenario = generate_scenario(
                template_scenario.room_width, template_scenario.room_height, count,
                static_cast<int>(template_scenario.test_positions.size()),
                template_scenario.noise, seed,
                template_scenario.anchors.empty() ? PathLossModel{-20.0, -40.0}
                                                  : template_scenario.anchors.front().model);
            Scenario s = scenario;
            s.samples_per_position = template_scenario.samples_per_position;
            for (std::size_t a = 0; a < algorithms.size(); ++a) {
                ExperimentConfig cfg = config;
                cfg.algorithm = algorithms[a];
                const auto result = run_experiment(s, cfg, flc1, flc2);
                for (const auto& o : result.outcomes)
                    per_algo[a].push_back(o.error);
            }
        }
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            double sum = 0.0;
            for (const double e : per_algo[a])
                sum += e;
            rows.push_back(SweepRow{count, algorithms[a],
                                    sum / static_cast<double>(per_algo[a].size())});
        }
    }
    return rows;
}

} // namespace lumloc
