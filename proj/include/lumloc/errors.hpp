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

#include <stdexcept>
#include <string>

namespace lumloc {

/// Failure identities surfaced by the library. CLI commands map `config`-class
/// codes to exit 2 and data/runtime codes to exit 3.
enum class Errc {
    insufficient_data,
    degenerate_fit,
    non_positive_distance,
    zero_slope,
    empty_input,
    zero_rssi,
    zero_firing,
    median_undefined,
    negative_distance,
    mismatched_lengths,
    no_usable_samples,
    all_weights_zero,
    out_of_range,
    too_few_anchors,
    collinear_anchors,
    empty_interval,
    degenerate_old_interval,
    infeasible_chromosome,
    invalid_probability,
    invalid_room,
    zero_distance,
    unknown_anchor,
    invalid_config,
    io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace lumloc
