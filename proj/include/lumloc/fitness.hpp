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

#include "lumloc/pso.hpp"
#include "lumloc/simulator.hpp"

namespace lumloc {

/// Accuracy-driven tuning objective for controller 2: negative mean
/// localization error of the full pipeline over the scenario's labeled test
/// positions. The scenario's dwells, calibration and per-anchor distance
/// grids are precomputed once; each candidate only re-weights them, producing
/// exactly the fixes locate() would return for the decoded controller.
/// Candidates that zero out every anchor at some position score -infinity.
FitnessFn make_neg_mean_error_fitness(const Scenario& scenario, const FlcSpec& flc1,
                                      const FlcSpec& flc2_template,
                                      const ExperimentConfig& config);

} // namespace lumloc
