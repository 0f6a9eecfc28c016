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

#include "lumloc/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "lumloc/errors.hpp"

namespace lumloc {

namespace {

void check_inputs(std::span<const Anchor> anchors, std::span<const double> distances,
                  std::size_t min_anchors) {
    if (anchors.size() != distances.size())
        throw Error(Errc::mismatched_lengths, "anchors and distances must align");
    if (anchors.size() < min_anchors)
        throw Error(Errc::too_few_anchors, "not enough anchors for this solver");
    for (const double d : distances)
        if (d < 0.0)
            throw Error(Errc::negative_distance, "distances must be >= 0");
}

} // namespace

Vec2 minmax_locate(std::span<const Anchor> anchors, std::span<const double> distances) {
    check_inputs(anchors, distances, 2);
    double lo_x = -std::numeric_limits<double>::infinity();
    double lo_y = lo_x;
    double hi_x = std::numeric_limits<double>::infinity();
    double hi_y = hi_x;
    for (std::size_t n = 0; n < anchors.size(); ++n) {
        lo_x = std::max(lo_x, anchors[n].position.x - distances[n]);
        hi_x = std::min(hi_x, anchors[n].position.x + distances[n]);
        lo_y = std::max(lo_y, anchors[n].position.y - distances[n]);
        hi_y = std::min(hi_y, anchors[n].position.y + distances[n]);
    }
    return {(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
}

Vec2 trilaterate(std::span<const Anchor> anchors, std::span<const double> distances) {
    check_inputs(anchors, distances, 3);
    const Vec2 p0 = anchors[0].position;
    const double d0 = distances[0];

    // Normal equations of the (n-1) x 2 linearized system.
    double n11 = 0.0, n12 = 0.0, n22 = 0.0, r1 = 0.0, r2 = 0.0;
    for (std::size_t n = 1; n < anchors.size(); ++n) {
        const double ax = 2.0 * (anchors[n].position.x - p0.x);
        const double ay = 2.0 * (anchors[n].position.y - p0.y);
        const double px = anchors[n].position.x;
        const double py = anchors[n].position.y;
        const double rhs = d0 * d0 - distances[n] * distances[n] + px * px - p0.x * p0.x +
                           py * py - p0.y * p0.y;
        n11 += ax * ax;
        n12 += ax * ay;
        n22 += ay * ay;
        r1 += ax * rhs;
        r2 += ay * rhs;
    }
    const double det = n11 * n22 - n12 * n12;
    // det <= n11*n22 by Cauchy-Schwarz; a relative check keeps the tolerance
    // independent of the room scale.
    if (!(det > 1e-9 * std::max(n11 * n22, 1e-300)))
        throw Error(Errc::collinear_anchors, "anchor geometry is rank deficient");
    return {(n22 * r1 - n12 * r2) / det, (n11 * r2 - n12 * r1) / det};
}

Fix ml_locate(const GridMap& grid, std::span<const Anchor> anchors,
              std::span<const double> distances) {
    check_inputs(anchors, distances, 2);
    const std::vector<double> ones(anchors.size(), 1.0);
    const GridField w = aggregate_map(grid, anchors, distances, ones);
    const auto [i, j] = argmin_cell(w);
    Fix fix;
    fix.i = i;
    fix.j = j;
    fix.position = cell_center(grid, i, j);
    fix.w_min = w.at(i, j);
    for (std::size_t n = 0; n < anchors.size(); ++n)
        fix.per_anchor.push_back(FixPerAnchor{anchors[n].id, distances[n], 1.0});
    return fix;
}

} // namespace lumloc
