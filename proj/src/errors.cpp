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

#include "lumloc/errors.hpp"

namespace lumloc {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::degenerate_fit: return "DegenerateFit";
    case Errc::non_positive_distance: return "NonPositiveDistance";
    case Errc::zero_slope: return "ZeroSlope";
    case Errc::empty_input: return "EmptyInput";
    case Errc::zero_rssi: return "ZeroRssi";
    case Errc::zero_firing: return "ZeroFiring";
    case Errc::median_undefined: return "MedianUndefined";
    case Errc::negative_distance: return "NegativeDistance";
    case Errc::mismatched_lengths: return "MismatchedLengths";
    case Errc::no_usable_samples: return "NoUsableSamples";
    case Errc::all_weights_zero: return "AllWeightsZero";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::too_few_anchors: return "TooFewAnchors";
    case Errc::collinear_anchors: return "CollinearAnchors";
    case Errc::empty_interval: return "EmptyInterval";
    case Errc::degenerate_old_interval: return "DegenerateOldInterval";
    case Errc::infeasible_chromosome: return "InfeasibleChromosome";
    case Errc::invalid_probability: return "InvalidProbability";
    case Errc::invalid_room: return "InvalidRoom";
    case Errc::zero_distance: return "ZeroDistance";
    case Errc::unknown_anchor: return "UnknownAnchor";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::io_error: return "IoError";
    }
    return "Error";
}

} // namespace lumloc
