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
// File formats. JSON documents for controller specs, scenarios, calibrated
// anchors and fixes; CSV for samples, calibration data, convergence traces,
// CDFs, sweeps and grid fields. CSV numbers are written with 17 significant
// digits so rereads are lossless.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lumloc/eval.hpp"
#include "lumloc/fuzzy.hpp"
#include "lumloc/localization.hpp"
#include "lumloc/simulator.hpp"

namespace lumloc::io {

using json = nlohmann::json;

json flc_to_json(const FlcSpec& spec);
FlcSpec flc_from_json(const json& j);

json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const json& j);

json anchors_to_json(std::span<const Anchor> anchors);
std::vector<Anchor> anchors_from_json(const json& j);

json fix_to_json(const Fix& fix);

json stats_to_json(const std::string& algorithm, const ErrorStats& stats);

/// One dwell sample tagged with the test-position index it belongs to.
struct SampleRow {
    std::string anchor_id;
    int position_index = 0;
    std::int64_t sequence = 0;
    double rssi_db = 0.0;
};

struct CalibrationRow {
    std::string anchor_id;
    double distance_m = 0.0;
    double rssi_db = 0.0;
};

void write_samples_csv(std::ostream& os, std::span<const SampleRow> rows);
std::vector<SampleRow> read_samples_csv(std::istream& is);

void write_calibration_csv(std::ostream& os, std::span<const CalibrationRow> rows);
std::vector<CalibrationRow> read_calibration_csv(std::istream& is);

void write_trace_csv(std::ostream& os, std::span<const double> trace);
void write_cdf_csv(std::ostream& os, const EmpiricalCdf& cdf);
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
void write_matrix_csv(std::ostream& os, const GridField& field);

/// printf %.*g with 17 significant digits; round-trips any double.
std::string format_double(double v);

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);
void save_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace lumloc::io
