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

#include "lumloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include "detail/strjoin.hpp"
#include <map>

#include "lumloc/errors.hpp"
#include "lumloc/kernels.hpp"
#include "lumloc/stats.hpp"

namespace lumloc {

GridMap GridMap::cover(double width, double height, double cell_size) {
    if (!(width > 0.0 && height > 0.0))
        throw Error(Errc::invalid_room, "room sides must be positive");
    if (!(cell_size > 0.0))
        throw Error(Errc::invalid_config, "cell size must be positive");
    GridMap g;
    g.cell_size = cell_size;
    g.nx = static_cast<int>(std::ceil(width / cell_size - 1e-12));
    g.ny = static_cast<int>(std::ceil(height / cell_size - 1e-12));
    g.nx = std::max(g.nx, 1);
    g.ny = std::max(g.ny, 1);
    return g;
}

Vec2 cell_center(const GridMap& grid, int i, int j) {
    if (i < 1 || i > grid.nx || j < 1 || j > grid.ny)
        throw Error(Errc::out_of_range,
                    detail::strjoin("cell (", i, ", ", j, ") outside ", grid.nx, "x", grid.ny, " grid"));
    const double s = grid.cell_size;
    return {static_cast<double>(i) * s - s / 2.0, static_cast<double>(j) * s - s / 2.0};
}

namespace {

// Flattened center coordinates in grid order (i outer, j inner), matching
// GridField::flat_index.
void fill_centers(const GridMap& grid, std::vector<double>& cx, std::vector<double>& cy) {
    const double s = grid.cell_size;
    cx.resize(grid.cell_count());
    cy.resize(grid.cell_count());
    std::size_t idx = 0;
    for (int i = 1; i <= grid.nx; ++i) {
        const double x = static_cast<double>(i) * s - s / 2.0;
        for (int j = 1; j <= grid.ny; ++j, ++idx) {
            cx[idx] = x;
            cy[idx] = static_cast<double>(j) * s - s / 2.0;
        }
    }
}

} // namespace

std::pair<int, int> argmin_cell(const GridField& field) {
    // Flat order scan with strict improvement: ties resolve to the smallest i,
    // then smallest j, independent of how the field was produced.
    std::size_t best = 0;
    for (std::size_t idx = 1; idx < field.values.size(); ++idx)
        if (field.values[idx] < field.values[best])
            best = idx;
    const auto ny = static_cast<std::size_t>(field.grid.ny);
    return {static_cast<int>(best / ny) + 1, static_cast<int>(best % ny) + 1};
}

std::vector<Anchor> offline_calibrate(std::span<const AnchorCalibration> sets,
                                      const FlcSpec& flc1) {
    if (sets.empty())
        throw Error(Errc::median_undefined, "no anchors to calibrate");

    std::vector<Anchor> anchors;
    anchors.reserve(sets.size());
    std::vector<double> zs, ks;
    for (const auto& set : sets) {
        PathLossModel model;
        try {
            model = fit_path_loss(set.points);
        } catch (const Error& e) {
            throw Error(e.code(), detail::strjoin("anchor ", set.id, ": ", e.what()));
        }
        anchors.push_back(Anchor{set.id, set.position, model, 0.0, 0.0, 0.0});
        zs.push_back(model.z);
        ks.push_back(model.k);
    }

    const double z_med = nearest_rank_median(zs);
    const double k_med = nearest_rank_median(ks);
    for (auto& a : anchors) {
        const double z_den = std::max(std::fabs(z_med), 1e-9);
        const double k_den = std::max(std::fabs(k_med), 1e-9);
        a.z_score = 100.0 * std::max(0.0, 1.0 - std::fabs(a.model.z - z_med) / z_den);
        a.k_score = std::max(0.0, 1.0 - std::fabs(a.model.k - k_med) / k_den);
        try {
            a.reliability = flc_infer(flc1, a.z_score, a.k_score);
        } catch (const Error& e) {
            if (e.code() != Errc::zero_firing)
                throw;
            a.reliability = 0.0; // score outside the controller's covered support
        }
    }
    return anchors;
}

ErrorMap build_error_map(const GridMap& grid, const Anchor& anchor, double w_hat) {
    if (w_hat < 0.0)
        throw Error(Errc::negative_distance, "estimated distance must be >= 0");
    std::vector<double> cx, cy;
    fill_centers(grid, cx, cy);
    ErrorMap map{grid, std::vector<double>(grid.cell_count())};
    std::vector<double> dist(grid.cell_count());
    kernels::distance_batch(cx.data(), cy.data(), dist.size(), anchor.position.x,
                            anchor.position.y, dist.data());
    kernels::abs_residual_batch(dist.data(), dist.size(), w_hat, map.values.data());
    return map;
}

double total_reliability(const Anchor& anchor, double proximity, const FlcSpec& flc2) {
    return flc_infer(flc2, anchor.reliability, proximity);
}

GridField aggregate_map(const GridMap& grid, std::span<const Anchor> anchors,
                        std::span<const double> w_hats, std::span<const double> i_ns) {
    if (anchors.size() != w_hats.size() || anchors.size() != i_ns.size())
        throw Error(Errc::mismatched_lengths, "anchors, distances and weights must align");
    std::vector<double> cx, cy;
    fill_centers(grid, cx, cy);
    GridField w{grid, std::vector<double>(grid.cell_count(), 0.0)};
    std::vector<double> dist(grid.cell_count());
    for (std::size_t n = 0; n < anchors.size(); ++n) {
        kernels::distance_batch(cx.data(), cy.data(), dist.size(), anchors[n].position.x,
                                anchors[n].position.y, dist.data());
        kernels::weighted_sq_residual_accumulate(w.values.data(), dist.data(), dist.size(),
                                                 w_hats[n], i_ns[n]);
    }
    return w;
}

Fix locate(const GridMap& grid, std::span<const Anchor> anchors,
           std::span<const RssiSample> samples, const FlcSpec& flc2) {
    // Group samples per anchor, keeping the anchors' declared order.
    std::map<std::string, std::vector<RssiSample>> by_id;
    for (const auto& s : samples)
        by_id[s.anchor_id].push_back(s);
    for (const auto& [id, group] : by_id) {
        if (std::none_of(anchors.begin(), anchors.end(),
                         [&](const Anchor& a) { return a.id == id; }))
            throw Error(Errc::unknown_anchor, detail::strjoin("samples reference anchor ", id));
    }

    std::vector<const Anchor*> active;
    std::vector<double> rssi;
    for (const auto& a : anchors) {
        auto it = by_id.find(a.id);
        if (it == by_id.end() || it->second.empty())
            continue;
        const auto kept = filter_samples(it->second);
        double sum = 0.0;
        for (const auto& s : kept)
            sum += s.rssi_db;
        active.push_back(&a);
        rssi.push_back(sum / static_cast<double>(kept.size()));
    }
    if (active.empty())
        throw Error(Errc::no_usable_samples, "no anchor has usable samples");

    std::vector<Anchor> used;
    std::vector<double> w_hats, i_ns;
    Fix fix;
    for (std::size_t n = 0; n < active.size(); ++n) {
        const Anchor& a = *active[n];
        const double w_hat = estimate_distance(a.model, rssi[n]);
        const double prox = proximity_index(rssi[n], rssi);
        double i_n = 0.0;
        try {
            i_n = total_reliability(a, prox, flc2);
        } catch (const Error& e) {
            if (e.code() != Errc::zero_firing)
                throw;
            i_n = 0.0; // inputs outside the tuned controller's covered support
        }
        used.push_back(a);
        w_hats.push_back(w_hat);
        i_ns.push_back(i_n);
        fix.per_anchor.push_back(FixPerAnchor{a.id, w_hat, i_n});
    }
    if (std::all_of(i_ns.begin(), i_ns.end(), [](double v) { return v == 0.0; }))
        throw Error(Errc::all_weights_zero, "every anchor weight is zero");

    const GridField w = aggregate_map(grid, used, w_hats, i_ns);
    const auto [bi, bj] = argmin_cell(w);
    fix.i = bi;
    fix.j = bj;
    fix.position = cell_center(grid, fix.i, fix.j);
    fix.w_min = w.at(fix.i, fix.j);
    return fix;
}

} // namespace lumloc
