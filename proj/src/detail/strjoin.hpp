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

#include <sstream>
#include <string>

namespace lumloc::detail {

// Minimal message builder for diagnostics (libstdc++ 11 has no <format>).
template <typename... Args> std::string strjoin(const Args&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

} // namespace lumloc::detail
