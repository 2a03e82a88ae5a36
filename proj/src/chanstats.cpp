// SPDX-License-Identifier: Apache-2.0
//
// chanlab: outdoor urban channel modelling toolkit (0.5-100 GHz)
// Copyright (C) 2026 The chanlab authors
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

#include "chanlab/chanstats.hpp"

#include "chanlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace chanlab {

namespace {

double total_power(std::span<const RayRecord> rays)
{
    if (rays.empty())
        throw ValidationError("spread statistics need at least one ray");
    double p = 0.0;
    for (const auto& r : rays)
        p += r.power;
    if (!(p > 0.0))
        throw ValidationError("spread statistics need positive total power");
    return p;
}

// Two-pass weighted deviation of (value, weight) pairs.
double weighted_deviation(std::span<const std::pair<double, double>> vw, double wsum)
{
    double mean = 0.0;
    for (const auto& [v, w] : vw)
        mean += w * v;
    mean /= wsum;
    double m2 = 0.0;
    for (const auto& [v, w] : vw)
        m2 += w * (v - mean) * (v - mean);
    return std::sqrt(std::max(0.0, m2 / wsum));
}

double angle_of(const RayRecord& r, AngleKind k)
{
    switch (k) {
    case AngleKind::AodAz:
        return r.aod_az_deg;
    case AngleKind::AoaAz:
        return r.aoa_az_deg;
    case AngleKind::AodEl:
        return r.aod_el_deg;
    case AngleKind::AoaEl:
        return r.aoa_el_deg;
    }
    return 0.0;
}

} // namespace

std::string_view angle_kind_name(AngleKind k)
{
    switch (k) {
    case AngleKind::AodAz:
        return "aod_az";
    case AngleKind::AoaAz:
        return "aoa_az";
    case AngleKind::AodEl:
        return "aod_el";
    case AngleKind::AoaEl:
        return "aoa_el";
    }
    return "?";
}

double rms_delay_spread(std::span<const RayRecord> rays)
{
    const double p = total_power(rays);
    std::vector<std::pair<double, double>> vw;
    vw.reserve(rays.size());
    for (const auto& r : rays)
        vw.emplace_back(r.delay_ns, r.power);
    return weighted_deviation(vw, p);
}

double rms_angle_spread(std::span<const RayRecord> rays, AngleKind which)
{
    const double p = total_power(rays);
    std::vector<std::pair<double, double>> vw;
    vw.reserve(rays.size());

    if (which == AngleKind::AodEl || which == AngleKind::AoaEl) {
        for (const auto& r : rays)
            vw.emplace_back(angle_of(r, which), r.power);
        return weighted_deviation(vw, p);
    }

    for (const auto& r : rays)
        vw.emplace_back(wrap_azimuth(angle_of(r, which)), r.power);
    std::sort(vw.begin(), vw.end());

    // Offsets from the smallest angle, all in [0, 360). Cut c lifts the first c
    // entries by 360; track the moments incrementally to find the best cut.
    const double base = vw.front().first;
    double s1 = 0.0, s2 = 0.0;
    for (const auto& [v, w] : vw) {
        const double t = v - base;
        s1 += w * t;
        s2 += w * t * t;
    }
    std::size_t best_cut = 0;
    double best_var = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < vw.size(); ++c) {
        if (c > 0) {
            const double t = vw[c - 1].first - base;
            const double w = vw[c - 1].second;
            s1 += w * 360.0;
            s2 += w * (720.0 * t + 360.0 * 360.0);
        }
        const double mean = s1 / p;
        const double var = s2 / p - mean * mean;
        if (var < best_var) {
            best_var = var;
            best_cut = c;
        }
    }
    for (std::size_t i = 0; i < best_cut; ++i)
        vw[i].first += 360.0;
    return weighted_deviation(vw, p);
}

std::optional<XprStats> xpr_stats(std::span<const RayRecord> rays)
{
    std::vector<double> v;
    for (const auto& r : rays)
        if (r.xpr_db)
            v.push_back(*r.xpr_db);
    if (v.empty())
        return std::nullopt;
    XprStats s;
    s.count = v.size();
    // Accumulate offsets from the first value so constant input stays exact.
    const double ref = v.front();
    double sum = 0.0;
    for (double x : v)
        sum += x - ref;
    s.mean_db = ref + sum / static_cast<double>(v.size());
    double m2 = 0.0;
    for (double x : v)
        m2 += (x - s.mean_db) * (x - s.mean_db);
    s.std_db = std::sqrt(m2 / static_cast<double>(v.size()));
    return s;
}

SpreadSet compute_spreads(std::span<const RayRecord> rays)
{
    SpreadSet s;
    s.ray_count = rays.size();
    s.power = total_power(rays);
    s.rms_delay_spread_ns = rms_delay_spread(rays);
    s.asd_az_deg = rms_angle_spread(rays, AngleKind::AodAz);
    s.asa_az_deg = rms_angle_spread(rays, AngleKind::AoaAz);
    s.asd_el_deg = rms_angle_spread(rays, AngleKind::AodEl);
    s.asa_el_deg = rms_angle_spread(rays, AngleKind::AoaEl);
    s.xpr = xpr_stats(rays);
    return s;
}

SpreadReport spread_report(std::span<const RayRecord> rays, const ClusterSet* clusters)
{
    SpreadReport rep;
    rep.global = compute_spreads(rays);
    if (!clusters)
        return rep;
    if (clusters->assignment.size() != rays.size())
        throw ValidationError("cluster assignment does not match the ray set");
    std::vector<std::vector<RayRecord>> groups(clusters->cluster_count());
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (clusters->pruned[i])
            continue;
        groups.at(clusters->assignment[i]).push_back(rays[i]);
    }
    for (const auto& g : groups)
        rep.per_cluster.push_back(compute_spreads(g));
    return rep;
}

} // namespace chanlab
