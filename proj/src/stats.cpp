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

#include "lumloc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lumloc/errors.hpp"

namespace lumloc {

double nearest_rank_quantile(std::span<const double> values, double p) {
    if (values.empty())
        throw Error(Errc::empty_input, "quantile of empty data");
    if (!(p > 0.0 && p <= 1.0))
        throw Error(Errc::invalid_probability, "p must be in (0, 1]");
    const auto n = values.size();
    // The 1e-12 backoff keeps ranks stable when p*n lands a hair above an
    // integer (e.g. 0.1 * 30).
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - 1e-12));
    rank = std::clamp<std::size_t>(rank, 1, n);
    std::vector<double> sorted(values.begin(), values.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                     sorted.end());
    return sorted[rank - 1];
}

double nearest_rank_median(std::span<const double> values) {
    return nearest_rank_quantile(values, 0.5);
}

} // namespace lumloc
