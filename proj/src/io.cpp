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

#include "lumloc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "detail/strjoin.hpp"
#include "lumloc/errors.hpp"

namespace lumloc::io {

namespace {

json mf_to_json(const TriangularMf& mf) { return json::array({mf.a, mf.m, mf.b}); }

TriangularMf mf_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3)
        throw Error(Errc::io_error, what + ": expected [a, m, b]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json variable_to_json(const FuzzyVariable& var) {
    return json{{"name", var.name},
                {"universe", json::array({var.lo, var.hi})},
                {"terms",
                 {{"Low", mf_to_json(var.terms[0])},
                  {"Medium", mf_to_json(var.terms[1])},
                  {"High", mf_to_json(var.terms[2])}}}};
}

FuzzyVariable variable_from_json(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw Error(Errc::io_error, "missing variable: " + key);
    const json& v = j.at(key);
    FuzzyVariable var;
    var.name = v.value("name", key);
    const json& u = v.at("universe");
    var.lo = u.at(0).get<double>();
    var.hi = u.at(1).get<double>();
    const json& t = v.at("terms");
    var.terms[0] = mf_from_json(t.at("Low"), key + ".Low");
    var.terms[1] = mf_from_json(t.at("Medium"), key + ".Medium");
    var.terms[2] = mf_from_json(t.at("High"), key + ".High");
    return var;
}

json vec2_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec2_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2)
        throw Error(Errc::io_error, what + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

json flc_to_json(const FlcSpec& spec) {
    json rules = json::array();
    for (int i = 0; i < 3; ++i)
        rules.push_back(json::array({spec.rules.consequents[i][0], spec.rules.consequents[i][1],
                                     spec.rules.consequents[i][2]}));
    return json{{"input1", variable_to_json(spec.input1)},
                {"input2", variable_to_json(spec.input2)},
                {"output", variable_to_json(spec.output)},
                {"rules", rules},
                {"mode",
                 spec.mode == InferenceMode::singleton ? "Singleton" : "MamdaniClipped"},
                {"tnorm", spec.tnorm == TNorm::min ? "Min" : "Product"}};
}

FlcSpec flc_from_json(const json& j) {
    FlcSpec spec;
    spec.input1 = variable_from_json(j, "input1");
    spec.input2 = variable_from_json(j, "input2");
    spec.output = variable_from_json(j, "output");
    const json& rules = j.at("rules");
    if (!rules.is_array() || rules.size() != 3)
        throw Error(Errc::io_error, "rules: expected a 3x3 array");
    for (int i = 0; i < 3; ++i) {
        if (!rules[i].is_array() || rules[i].size() != 3)
            throw Error(Errc::io_error, "rules: expected a 3x3 array");
        for (int k = 0; k < 3; ++k)
            spec.rules.consequents[i][k] = rules[i][k].get<double>();
    }
    const std::string mode = j.value("mode", "Singleton");
    if (mode == "Singleton")
        spec.mode = InferenceMode::singleton;
    else if (mode == "MamdaniClipped")
        spec.mode = InferenceMode::mamdani_clipped;
    else
        throw Error(Errc::io_error, "unknown mode: " + mode);
    const std::string tnorm = j.value("tnorm", "Min");
    if (tnorm == "Min")
        spec.tnorm = TNorm::min;
    else if (tnorm == "Product")
        spec.tnorm = TNorm::product;
    else
        throw Error(Errc::io_error, "unknown tnorm: " + tnorm);
    return spec;
}

json scenario_to_json(const Scenario& s) {
    json anchors = json::array();
    for (const auto& a : s.anchors)
        anchors.push_back(json{{"id", a.id},
                               {"pos", vec2_to_json(a.position)},
                               {"z", a.model.z},
                               {"k", a.model.k}});
    json positions = json::array();
    for (const auto& p : s.test_positions)
        positions.push_back(vec2_to_json(p));
    return json{{"room", json::array({s.room_width, s.room_height})},
                {"anchors", anchors},
                {"noise",
                 {{"sigma_db", s.noise.sigma_db},
                  {"p_multipath", s.noise.p_multipath},
                  {"attenuation",
                   json::array({s.noise.attenuation_lo_db, s.noise.attenuation_hi_db})}}},
                {"test_positions", positions},
                {"samples_per_position", s.samples_per_position},
                {"seed", s.seed}};
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    const json& room = j.at("room");
    s.room_width = room.at(0).get<double>();
    s.room_height = room.at(1).get<double>();
    for (const auto& a : j.at("anchors")) {
        ScenarioAnchor anchor;
        anchor.id = a.at("id").get<std::string>();
        anchor.position = vec2_from_json(a.at("pos"), "anchor pos");
        anchor.model.z = a.at("z").get<double>();
        anchor.model.k = a.at("k").get<double>();
        s.anchors.push_back(std::move(anchor));
    }
    const json& noise = j.at("noise");
    s.noise.sigma_db = noise.at("sigma_db").get<double>();
    s.noise.p_multipath = noise.at("p_multipath").get<double>();
    s.noise.attenuation_lo_db = noise.at("attenuation").at(0).get<double>();
    s.noise.attenuation_hi_db = noise.at("attenuation").at(1).get<double>();
    for (const auto& p : j.at("test_positions"))
        s.test_positions.push_back(vec2_from_json(p, "test position"));
    s.samples_per_position = j.at("samples_per_position").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

json anchors_to_json(std::span<const Anchor> anchors) {
    json arr = json::array();
    for (const auto& a : anchors)
        arr.push_back(json{{"id", a.id},
                           {"position", vec2_to_json(a.position)},
                           {"z", a.model.z},
                           {"k", a.model.k},
                           {"z_score", a.z_score},
                           {"k_score", a.k_score},
                           {"reliability", a.reliability}});
    return json{{"anchors", arr}};
}

std::vector<Anchor> anchors_from_json(const json& j) {
    std::vector<Anchor> anchors;
    for (const auto& a : j.at("anchors")) {
        Anchor anchor;
        anchor.id = a.at("id").get<std::string>();
        if (a.contains("position"))
            anchor.position = vec2_from_json(a.at("position"), "anchor position");
        anchor.model.z = a.at("z").get<double>();
        anchor.model.k = a.at("k").get<double>();
        anchor.z_score = a.value("z_score", 100.0);
        anchor.k_score = a.value("k_score", 1.0);
        anchor.reliability = a.value("reliability", 1.0);
        anchors.push_back(std::move(anchor));
    }
    return anchors;
}

json fix_to_json(const Fix& fix) {
    json per_anchor = json::array();
    for (const auto& pa : fix.per_anchor)
        per_anchor.push_back(json{{"id", pa.id}, {"w_hat", pa.w_hat}, {"i_n", pa.i_n}});
    return json{{"cell", json::array({fix.i, fix.j})},
                {"position", vec2_to_json(fix.position)},
                {"w_min", fix.w_min},
                {"per_anchor", per_anchor}};
}

json stats_to_json(const std::string& algorithm, const ErrorStats& stats) {
    return json{{"algorithm", algorithm}, {"ae", stats.ae}, {"me", stats.me}, {"sd", stats.sd}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no, const char* what) {
    double v = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw Error(Errc::io_error, detail::strjoin("line ", line_no, ": bad ", what, " '", s, "'"));
    return v;
}

std::int64_t parse_int(const std::string& s, std::size_t line_no, const char* what) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(Errc::io_error, detail::strjoin("line ", line_no, ": bad ", what, " '", s, "'"));
    return v;
}

} // namespace

void write_samples_csv(std::ostream& os, std::span<const SampleRow> rows) {
    os << "anchor_id,position_index,sequence,rssi_db\n";
    for (const auto& r : rows)
        os << r.anchor_id << ',' << r.position_index << ',' << r.sequence << ','
           << format_double(r.rssi_db) << '\n';
}

std::vector<SampleRow> read_samples_csv(std::istream& is) {
    std::vector<SampleRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line_no == 1 || line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4)
            throw Error(Errc::io_error, detail::strjoin("line ", line_no, ": expected 4 fields"));
        rows.push_back(SampleRow{f[0], static_cast<int>(parse_int(f[1], line_no, "position")),
                                 parse_int(f[2], line_no, "sequence"),
                                 parse_double(f[3], line_no, "rssi")});
    }
    return rows;
}

void write_calibration_csv(std::ostream& os, std::span<const CalibrationRow> rows) {
    os << "anchor_id,distance_m,rssi_db\n";
    for (const auto& r : rows)
        os << r.anchor_id << ',' << format_double(r.distance_m) << ','
           << format_double(r.rssi_db) << '\n';
}

std::vector<CalibrationRow> read_calibration_csv(std::istream& is) {
    std::vector<CalibrationRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line_no == 1 || line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3)
            throw Error(Errc::io_error, detail::strjoin("line ", line_no, ": expected 3 fields"));
        rows.push_back(CalibrationRow{f[0], parse_double(f[1], line_no, "distance"),
                                      parse_double(f[2], line_no, "rssi")});
    }
    return rows;
}

void write_trace_csv(std::ostream& os, std::span<const double> trace) {
    os << "iteration,gbest_fitness\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        os << i << ',' << format_double(trace[i]) << '\n';
}

void write_cdf_csv(std::ostream& os, const EmpiricalCdf& cdf) {
    os << "error,probability\n";
    const auto n = static_cast<double>(cdf.sorted_errors.size());
    for (std::size_t i = 0; i < cdf.sorted_errors.size(); ++i)
        os << format_double(cdf.sorted_errors[i]) << ','
           << format_double(static_cast<double>(i + 1) / n) << '\n';
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "n_anchors,algorithm,mean_error\n";
    for (const auto& r : rows)
        os << r.n_anchors << ',' << algorithm_name(r.algorithm) << ','
           << format_double(r.mean_error) << '\n';
}

void write_matrix_csv(std::ostream& os, const GridField& field) {
    for (int i = 1; i <= field.grid.nx; ++i) {
        for (int j = 1; j <= field.grid.ny; ++j) {
            if (j > 1)
                os << ',';
            os << format_double(field.at(i, j));
        }
        os << '\n';
    }
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw Error(Errc::io_error, "cannot open " + path.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw Error(Errc::io_error, path.string() + ": " + e.what());
    }
}

void save_json_file(const std::filesystem::path& path, const json& j) {
    save_text_file(path, j.dump(2) + "\n");
}

void save_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
    os << text;
    if (!os)
        throw Error(Errc::io_error, "failed writing " + path.string());
}

} // namespace lumloc::io
