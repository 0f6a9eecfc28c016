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
// Two-stage localizer. Offline: fit each anchor's channel, score the fit
// against the fleet medians, and turn the scores into a reliability index via
// controller 1. Online: estimate per-anchor distances from filtered samples,
// weight each anchor's squared residual map by controller 2's total
// reliability index, and take the argmin cell of the aggregate map.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "lumloc/channel.hpp"
#include "lumloc/fuzzy.hpp"

namespace lumloc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double euclidean(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Beacon with a calibrated channel and its offline reliability index.
struct Anchor {
    std::string id;
    Vec2 position;
    PathLossModel model;
    double z_score = 100.0;   // agreement of Z with the fleet median, [0, 100]
    double k_score = 1.0;     // agreement of K with the fleet median, [0, 1]
    double reliability = 1.0; // controller 1 output
};

/// Square-cell discretization of the room. Cells are 1-based; cell (i, j) is
/// centered at (i*S - S/2, j*S - S/2).
struct GridMap {
    double cell_size = 1.0;
    int nx = 1;
    int ny = 1;

    /// Smallest grid covering a width x height room anchored at the origin.
    static GridMap cover(double width, double height, double cell_size);

    std::size_t cell_count() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    std::size_t flat_index(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(ny) +
               static_cast<std::size_t>(j - 1);
    }
};

/// Center of cell (i, j). Throws Errc::out_of_range outside [1,nx]x[1,ny].
Vec2 cell_center(const GridMap& grid, int i, int j);

/// Scalar field over the grid, stored row-major with i as the row.
struct GridField {
    GridMap grid;
    std::vector<double> values;

    double at(int i, int j) const { return values[grid.flat_index(i, j)]; }
};

using ErrorMap = GridField;

/// Cell (i, j) minimizing the field, ties broken by smallest i then j.
std::pair<int, int> argmin_cell(const GridField& field);

struct AnchorCalibration {
    std::string id;
    Vec2 position;
    std::vector<CalibrationPoint> points;
};

/// Offline stage: per-anchor least-squares fit, median-agreement scores
///   z_score = 100 * max(0, 1 - |Z_n - Z~| / |Z~|)
///   k_score =       max(0, 1 - |K_n - K~| / max(|K~|, 1e-9))
/// and reliability from controller 1. Anchors whose scores fall outside the
/// controller's covered support get reliability 0.
std::vector<Anchor> offline_calibrate(std::span<const AnchorCalibration> sets,
                                      const FlcSpec& flc1);

/// Per-anchor diagnostic map: |w_hat - distance(cell center, anchor)|.
ErrorMap build_error_map(const GridMap& grid, const Anchor& anchor, double w_hat);

/// Controller 2 output for one anchor. Propagates Errc::zero_firing.
double total_reliability(const Anchor& anchor, double proximity, const FlcSpec& flc2);

/// W(i,j) = sum_n I_n * (w_hat_n - distance_n(i,j))^2.
GridField aggregate_map(const GridMap& grid, std::span<const Anchor> anchors,
                        std::span<const double> w_hats, std::span<const double> i_ns);

struct FixPerAnchor {
    std::string id;
    double w_hat = 0.0;
    double i_n = 0.0;
};

/// Localization result: argmin cell of the aggregate map, its center
/// coordinates, the map value there, and the per-anchor inputs that formed it.
struct Fix {
    int i = 0;
    int j = 0;
    Vec2 position;
    double w_min = 0.0;
    std::vector<FixPerAnchor> per_anchor;
};

/// Full online stage: filter samples per anchor, average, invert to distance,
/// compute proximity indices, weight with controller 2, and take the argmin
/// cell (ties broken by smallest i, then smallest j). Anchors without samples
/// are skipped; anchors whose controller-2 inputs fall outside the covered
/// support contribute weight 0. Throws Errc::no_usable_samples when no anchor
/// has samples and Errc::all_weights_zero when every weight vanishes.
Fix locate(const GridMap& grid, std::span<const Anchor> anchors,
           std::span<const RssiSample> samples, const FlcSpec& flc2);

} // namespace lumloc
