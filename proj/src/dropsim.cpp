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

#include "chanlab/dropsim.hpp"

#include "chanlab/error.hpp"
#include "chanlab/pathloss.hpp"
#include "chanlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <thread>

namespace chanlab {

namespace {

// Substream tags.
constexpr std::uint64_t tag_ue = 1;
constexpr std::uint64_t tag_link = 2;
constexpr std::uint64_t tag_field = 3;

// Smallest distance handed to the LOS models for indoor UEs whose depth eats
// the whole link.
constexpr double min_los_distance_m = 1e-6;

void require_fraction(double v, const char* what)
{
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

struct UeDraw {
    Point2 pos;
    bool indoor = false;
    BplClass bpl_class = BplClass::LowLoss;
    double depth_m = 0.0;
    double incidence_deg = 0.0;
};

UeDraw draw_ue(const DropConfig& cfg, std::size_t u)
{
    Rng rng(derive_seed(cfg.seed, {tag_ue, u}));
    // Fixed draw order, independent of which options are active.
    const double u_radius = rng.uniform();
    const double u_angle = rng.uniform();
    const double u_indoor = rng.uniform();
    const double u_class = rng.uniform();
    const double u_depth = rng.uniform();
    const double u_incidence = rng.uniform();

    UeDraw d;
    if (cfg.placement == Placement::Explicit) {
        d.pos = cfg.ue_positions[u];
    } else {
        const double r0 = cfg.min_distance_m;
        const double r1 = cfg.disc_radius_m;
        const double r = std::sqrt(r0 * r0 + u_radius * (r1 * r1 - r0 * r0));
        const double a = 2.0 * pi * u_angle;
        d.pos = {cfg.disc_center.x + r * std::cos(a), cfg.disc_center.y + r * std::sin(a)};
    }
    d.indoor = u_indoor < cfg.indoor_fraction;
    d.bpl_class = u_class < cfg.high_loss_fraction ? BplClass::HighLoss : BplClass::LowLoss;
    d.depth_m = u_depth * cfg.max_indoor_depth_m;
    d.incidence_deg = u_incidence * cfg.max_incidence_deg;
    return d;
}

double sf_sigma(const DropConfig& cfg, const ScenarioParams& sp, bool abg_used)
{
    if (cfg.sf_sigma_db)
        return *cfg.sf_sigma_db;
    return abg_used ? sp.abg_sigma : sp.ci_sigma;
}

} // namespace

void DropConfig::validate(bool have_map) const
{
    if (environment_of(los_scenario) != environment_of(nlos_scenario))
        throw ValidationError("LOS and NLOS scenarios belong to different environments");
    if (!is_los_scenario(los_scenario) || is_los_scenario(nlos_scenario))
        throw ValidationError("scenario pair must be one LOS and one NLOS entry");
    if (!(frequency.ghz() > 0.0))
        throw ValidationError("frequency must be positive");
    if (pl_model == PlModelKind::CIF)
        throw ValidationError("the drop engine supports ci and abg path loss (no CIF parameters in the catalog)");
    if (ap_positions.empty())
        throw ValidationError("at least one access point is required");
    if (placement == Placement::Explicit) {
        if (ue_positions.empty())
            throw ValidationError("explicit placement needs ue_positions");
    } else {
        if (ue_count == 0)
            throw ValidationError("ue_count must be positive");
        if (!(min_distance_m >= 0.0 && disc_radius_m > min_distance_m))
            throw ValidationError("disc placement needs 0 <= min_distance_m < disc_radius_m");
    }
    if (los_mode == LosMode::Map && !have_map)
        throw ValidationError("los_mode 'map' requires a building map");
    if (los_mode == LosMode::Stochastic && have_map)
        throw ValidationError("a building map was given but los_mode is not 'map'");
    if (!(ue_height_m > 0.0))
        throw ValidationError("UE height must be positive");
    if (std::holds_alternative<LosUma3gpp>(effective_los_model()) &&
        std::get<LosUma3gpp>(effective_los_model()).h_ut_m > uma_height_max_m)
        throw ValidationError("UE height above 23 m is outside the 3GPP UMa LOS model");
    require_fraction(indoor_fraction, "indoor_fraction");
    require_fraction(high_loss_fraction, "high_loss_fraction");
    o2i.validate();
    if (!(max_indoor_depth_m >= 0.0))
        throw ValidationError("max_indoor_depth_m must be non-negative");
    if (!(max_incidence_deg >= 0.0 && max_incidence_deg < 90.0))
        throw ValidationError("max_incidence_deg must lie in [0, 90)");
    if (sf_mode == SfMode::ExpCorrelated && !(decorrelation_m > 0.0))
        throw ValidationError("correlated shadow fading needs a positive decorrelation distance");
    if (sf_sigma_db && !(*sf_sigma_db >= 0.0))
        throw ValidationError("sf_sigma_db must be non-negative");
    if (!(los_bin_width_m > 0.0))
        throw ValidationError("los_bin_width_m must be positive");
    if (threads == 0)
        throw ValidationError("threads must be at least 1");
}

LosModel DropConfig::effective_los_model() const
{
    if (los_model)
        return *los_model;
    if (environment_of(los_scenario) == Environment::UMa)
        return LosUma3gpp{ue_height_m};
    return LosD1D2{umi_3gpp_params};
}

CorrelatedField::CorrelatedField(std::uint64_t seed, double decorrelation_m, std::size_t components)
    : scale_(std::sqrt(2.0 / static_cast<double>(components)))
{
    Rng rng(seed);
    waves_.reserve(components);
    for (std::size_t m = 0; m < components; ++m) {
        // Bivariate Cauchy: Gaussian direction over |N(0,1)|, scaled by 1/L.
        const double gx = rng.normal();
        const double gy = rng.normal();
        double u = 0.0;
        while (u == 0.0)
            u = std::abs(rng.normal());
        const double phase = 2.0 * pi * rng.uniform();
        waves_.push_back({gx / (decorrelation_m * u), gy / (decorrelation_m * u), phase});
    }
}

double CorrelatedField::operator()(Point2 p) const
{
    double acc = 0.0;
    for (const auto& [kx, ky, ph] : waves_)
        acc += std::cos(kx * p.x + ky * p.y + ph);
    return scale_ * acc;
}

DropResult run_drop(const DropConfig& cfg, const BuildingMap* map)
{
    cfg.validate(map != nullptr);
    const LosModel los_model = cfg.effective_los_model();
    const std::size_t n_ue = cfg.placement == Placement::Explicit ? cfg.ue_positions.size() : cfg.ue_count;
    const std::size_t n_ap = cfg.ap_positions.size();

    if (map)
        for (const auto& ap : cfg.ap_positions)
            if (map->locate(ap).indoor)
                throw ValidationError("access point inside a building");

    // One field per (AP, LOS state).
    std::vector<CorrelatedField> fields;
    if (cfg.sf_mode == SfMode::ExpCorrelated)
        for (std::size_t a = 0; a < n_ap; ++a)
            for (std::uint64_t state = 0; state < 2; ++state)
                fields.emplace_back(derive_seed(cfg.seed, {tag_field, a, state}), cfg.decorrelation_m);

    const auto& los_params = catalog_lookup(cfg.los_scenario);
    const auto& nlos_params = catalog_lookup(cfg.nlos_scenario);
    const bool stochastic = cfg.los_mode == LosMode::Stochastic;

    DropResult res;
    res.config = cfg;
    res.links.resize(n_ue * n_ap);

    auto simulate_ue = [&](std::size_t u) {
        const UeDraw ue = draw_ue(cfg, u);
        const auto where = map ? map->locate(ue.pos) : Position2D{ue.pos, ue.indoor, std::nullopt};
        for (std::size_t a = 0; a < n_ap; ++a) {
            DropLink& l = res.links[u * n_ap + a];
            const Point2 ap = cfg.ap_positions[a];
            Rng rng(derive_seed(cfg.seed, {tag_link, u, a}));
            const double u_los = rng.uniform();
            const double g_sf = rng.normal();

            l.ue = u;
            l.ap = a;
            l.ue_pos = ue.pos;
            l.d2d_m = distance(ap, ue.pos);
            l.indoor = where.indoor;
            l.bpl_class = ue.bpl_class;

            if (stochastic) {
                l.depth_m = l.indoor ? std::min(ue.depth_m, l.d2d_m) : 0.0;
                l.incidence_deg = l.indoor ? ue.incidence_deg : 0.0;
                l.los_distance_m = std::max(indoor_effective_distance(l.d2d_m - l.depth_m), min_los_distance_m);
                l.p_los = p_los(los_model, l.los_distance_m);
                l.los = u_los < l.p_los;
            } else {
                l.p_los = std::numeric_limits<double>::quiet_NaN();
                l.los = map->is_los(ap, ue.pos);
                if (l.indoor) {
                    const auto wall = map->outer_wall_distance(ap, ue.pos);
                    l.depth_m = wall.depth;
                    l.incidence_deg = std::min(wall.incidence_deg, 89.9);
                    l.los_distance_m = indoor_effective_distance(wall.wall_distance);
                } else {
                    l.los_distance_m = l.d2d_m;
                }
            }

            const auto& sp = l.los ? los_params : nlos_params;
            const double d_pl = std::max(l.d2d_m, 1.0);
            const bool abg_used = cfg.pl_model == PlModelKind::ABG && !l.los;
            l.pl_db = abg_used ? abg_pl(abg_model(sp), cfg.frequency, d_pl) : ci_pl(ci_model(sp), cfg.frequency, d_pl);

            const double sigma = sf_sigma(cfg, sp, abg_used);
            const double unit = cfg.sf_mode == SfMode::Iid ? g_sf : fields[a * 2 + (l.los ? 0 : 1)](ue.pos);
            l.sf_db = sigma * unit;

            l.o2i_db = l.indoor ? o2i_loss(l.bpl_class, cfg.frequency, l.depth_m, l.incidence_deg, cfg.o2i) : 0.0;
            l.coupling_loss_db = l.pl_db + l.sf_db + l.o2i_db;
        }
    };

    // Each UE writes only its own pre-allocated slots, so the split across
    // threads cannot change the result.
    const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(cfg.threads, std::max<std::size_t>(n_ue, 1)));
    if (nt <= 1) {
        for (std::size_t u = 0; u < n_ue; ++u)
            simulate_ue(u);
    } else {
        std::vector<std::exception_ptr> errors(nt);
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < nt; ++t)
                pool.emplace_back([&, t] {
                    try {
                        for (std::size_t u = t; u < n_ue; u += nt)
                            simulate_ue(u);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
        }
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    // Aggregates, in link order.
    std::map<long, LosFractionBin> bins;
    std::size_t los_links = 0;
    for (const auto& l : res.links) {
        const long idx = static_cast<long>(std::floor(l.d2d_m / cfg.los_bin_width_m));
        auto& b = bins[idx];
        b.d_lo = static_cast<double>(idx) * cfg.los_bin_width_m;
        b.d_hi = static_cast<double>(idx + 1) * cfg.los_bin_width_m;
        ++b.count;
        b.los_count += l.los ? 1 : 0;
        if (stochastic)
            b.expected += l.p_los;
        los_links += l.los ? 1 : 0;
        res.indoor_links += l.indoor ? 1 : 0;
        res.coupling_loss_sorted.push_back(l.coupling_loss_db);
    }
    for (auto& [idx, b] : bins) {
        b.fraction = static_cast<double>(b.los_count) / static_cast<double>(b.count);
        b.expected = stochastic ? b.expected / static_cast<double>(b.count) : std::numeric_limits<double>::quiet_NaN();
        res.los_bins.push_back(b);
    }
    std::sort(res.coupling_loss_sorted.begin(), res.coupling_loss_sorted.end());
    res.los_fraction = res.links.empty() ? 0.0 : static_cast<double>(los_links) / static_cast<double>(res.links.size());
    return res;
}

std::vector<PercentileRow> coupling_loss_cdf(const DropResult& result, std::span<const double> percentiles)
{
    const auto& v = result.coupling_loss_sorted;
    if (v.empty())
        throw ValidationError("coupling loss CDF of an empty drop");
    std::vector<PercentileRow> out;
    out.reserve(percentiles.size());
    for (const double p : percentiles) {
        if (!(p >= 0.0 && p <= 100.0))
            throw ValidationError("percentiles must lie in [0, 100]");
        const auto n = static_cast<double>(v.size());
        const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(p / 100.0 * n)));
        out.push_back({p, v[std::min(rank, v.size()) - 1]});
    }
    return out;
}

} // namespace chanlab
