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

#pragma once

#include <span>

namespace lumloc {

/// Nearest-rank order statistic: the ceil(p*n)-th smallest value, p in (0, 1].
/// One quantile definition is used everywhere (sample filtering, calibration
/// medians, error metrics) so that the median always equals quantile(0.5).
double nearest_rank_quantile(std::span<const double> values, double p);

/// quantile(0.5): for even n this is the lower of the two central values.
double nearest_rank_median(std::span<const double> values);

} // namespace lumloc
