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

#include "lumloc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lumloc/errors.hpp"
#include "lumloc/stats.hpp"

namespace lumloc {

PathLossModel fit_path_loss(std::span<const CalibrationPoint> points) {
    std::set<double> distinct;
    for (const auto& p : points) {
        if (!(p.distance_m > 0.0))
            throw Error(Errc::non_positive_distance, "calibration distance must be > 0");
        distinct.insert(p.distance_m);
    }
    if (distinct.size() < 2)
        throw Error(Errc::insufficient_data, "need at least 2 distinct calibration distances");

    const auto n = static_cast<double>(points.size());
    double sum_x = 0.0, sum_y = 0.0;
    for (const auto& p : points) {
        sum_x += std::log10(p.distance_m);
        sum_y += p.rssi_db;
    }
    const double mean_x = sum_x / n;
    const double mean_y = sum_y / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        const double dx = std::log10(p.distance_m) - mean_x;
        sxx += dx * dx;
        sxy += dx * (p.rssi_db - mean_y);
    }
    if (sxx <= 0.0)
        throw Error(Errc::degenerate_fit, "log-distances coincide");
    const double z = sxy / sxx;
    return {z, mean_y - z * mean_x};
}

double predict_rssi(const PathLossModel& model, double w) {
    if (!(w > 0.0))
        throw Error(Errc::non_positive_distance, "distance must be > 0");
    return model.z * std::log10(w) + model.k;
}

double estimate_distance(const PathLossModel& model, double rssi) {
    if (model.z == 0.0)
        throw Error(Errc::zero_slope, "cannot invert a flat channel");
    return std::pow(10.0, (rssi - model.k) / model.z);
}

std::vector<RssiSample> filter_samples(std::span<const RssiSample> samples) {
    if (samples.empty())
        throw Error(Errc::empty_input, "no samples to filter");
    std::vector<double> mags;
    mags.reserve(samples.size());
    for (const auto& s : samples)
        mags.push_back(std::fabs(s.rssi_db));
    const double cutoff = nearest_rank_quantile(mags, 0.25);
    std::vector<RssiSample> kept;
    for (const auto& s : samples)
        if (std::fabs(s.rssi_db) <= cutoff)
            kept.push_back(s);
    return kept;
}

std::map<std::string, double> aggregate_rssi(std::span<const RssiSample> filtered) {
    if (filtered.empty())
        throw Error(Errc::empty_input, "no samples to aggregate");
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& s : filtered) {
        auto& [sum, count] = acc[s.anchor_id];
        sum += s.rssi_db;
        ++count;
    }
    std::map<std::string, double> means;
    for (const auto& [id, sc] : acc)
        means[id] = sc.first / static_cast<double>(sc.second);
    return means;
}

double proximity_index(double rssi_n, std::span<const double> all_rssi) {
    if (all_rssi.empty())
        throw Error(Errc::empty_input, "no signals to compare against");
    if (rssi_n == 0.0)
        throw Error(Errc::zero_rssi, "anchor signal magnitude is zero");
    double min_mag = std::fabs(all_rssi[0]);
    for (const double r : all_rssi) {
        if (r == 0.0)
            throw Error(Errc::zero_rssi, "signal magnitude is zero");
        min_mag = std::min(min_mag, std::fabs(r));
    }
    return min_mag / std::fabs(rssi_n);
}

} // namespace lumloc
