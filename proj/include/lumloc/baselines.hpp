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
// Comparison localizers. All three consume the same per-anchor distance
// estimates as the fuzzy pipeline, so differences in accuracy come from the
// position solvers alone.

#pragma once

#include <span>

#include "lumloc/localization.hpp"

namespace lumloc {

/// Bounding-box method: intersect the per-anchor squares [x_n +- d_n] x
/// [y_n +- d_n] and return the center of the intersection (of the inverted
/// bound pair if the boxes are disjoint). Requires >= 2 anchors.
Vec2 minmax_locate(std::span<const Anchor> anchors, std::span<const double> distances);

/// Linearized least squares: subtract the first anchor's circle equation from
/// the others and solve the resulting 2-unknown system via normal equations.
/// Throws Errc::collinear_anchors when the normal matrix is singular within
/// relative tolerance 1e-9. Requires >= 3 anchors.
Vec2 trilaterate(std::span<const Anchor> anchors, std::span<const double> distances);

/// Grid-search maximum likelihood under equal-variance Gaussian range noise:
/// the argmin cell of sum_n (d_n - ||c(i,j) - p_n||)^2, identical to the
/// fuzzy aggregate map with unit weights. Requires >= 2 anchors.
Fix ml_locate(const GridMap& grid, std::span<const Anchor> anchors,
              std::span<const double> distances);

} // namespace lumloc
