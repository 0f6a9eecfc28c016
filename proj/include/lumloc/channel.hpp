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
// Log-distance RSSI channel: rssi = Z * log10(w) + K. Calibration by ordinary
// least squares, inversion back to distance, strongest-quartile sample
// filtering, and the proximity index that compares an anchor's signal against
// the strongest one heard.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lumloc {

/// Fitted channel parameters: slope Z in dB per decade of distance (negative
/// for physical channels) and intercept K in dB at 1 m.
struct PathLossModel {
    double z = 0.0;
    double k = 0.0;
};

struct CalibrationPoint {
    double distance_m = 0.0; // > 0
    double rssi_db = 0.0;
};

struct RssiSample {
    std::string anchor_id;
    double rssi_db = 0.0;
    std::int64_t sequence = 0; // index within a dwell
};

/// Ordinary least squares of rssi against log10(distance).
/// Throws Errc::insufficient_data (< 2 distinct distances) or
/// Errc::degenerate_fit (log-distances numerically coincident).
PathLossModel fit_path_loss(std::span<const CalibrationPoint> points);

/// Z * log10(w) + K. Throws Errc::non_positive_distance for w <= 0.
double predict_rssi(const PathLossModel& model, double w);

/// Inverse of predict_rssi: 10^((rssi - K) / Z). Throws Errc::zero_slope.
double estimate_distance(const PathLossModel& model, double rssi);

/// Keeps the strongest samples: those with |rssi| not above the nearest-rank
/// 25th percentile of |rssi| over the input. Weak tails are dropped because
/// long reflected paths only ever attenuate. Order-preserving, never empty.
std::vector<RssiSample> filter_samples(std::span<const RssiSample> samples);

/// Arithmetic mean of rssi per anchor id.
std::map<std::string, double> aggregate_rssi(std::span<const RssiSample> filtered);

/// min_i |rssi_i| / |rssi_n|, in (0, 1]; 1 for the strongest anchor.
/// Throws Errc::zero_rssi when any magnitude is zero.
double proximity_index(double rssi_n, std::span<const double> all_rssi);

} // namespace lumloc
