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

#include "chanlab/serialize.hpp"

#include "chanlab/csv.hpp"
#include "chanlab/error.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>

namespace chanlab {

namespace {

// JSON has no NaN; emit null instead.
json number_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what)
{
    if (!j.is_object())
        throw ValidationError(std::string(what) + " must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw ValidationError(std::string(what) + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad value for '") + key + "': " + e.what());
    }
}

Point2 point_from_json(const json& p)
{
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw ValidationError("points must be [x, y] number pairs");
    return {p[0].get<double>(), p[1].get<double>()};
}

json to_json(Point2 p)
{
    return json::array({p.x, p.y});
}

std::vector<Point2> points_from_json(const json& j)
{
    if (!j.is_array())
        throw ValidationError("expected an array of [x, y] points");
    std::vector<Point2> out;
    for (const auto& p : j)
        out.push_back(point_from_json(p));
    return out;
}

json params_json(D1D2Params p)
{
    return {{"d1", p.d1}, {"d2", p.d2}};
}

} // namespace

json to_json(const ScenarioParams& p)
{
    json j;
    j["scenario"] = std::string(scenario_name(p.id));
    j["ci"] = {{"n", p.ci_n}, {"sigma_db", p.ci_sigma}};
    if (p.abg_available)
        j["abg"] = {{"alpha", p.abg_alpha}, {"beta", p.abg_beta}, {"gamma", p.abg_gamma}, {"sigma_db", p.abg_sigma}};
    else
        j["abg"] = nullptr;
    j["los"] = params_json({p.los_d1, p.los_d2});
    return j;
}

json catalog_json()
{
    json arr = json::array();
    for (const auto id : all_scenarios)
        arr.push_back(to_json(catalog_lookup(id)));
    return arr;
}

json to_json(const FitReport& r)
{
    json j;
    j["model"] = std::string(model_kind_name(r.kind()));
    json params;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, CiModel>) {
                params = {{"n", m.n}};
            } else if constexpr (std::is_same_v<M, CifModel>) {
                params = {{"n", m.n}, {"b", m.b}, {"f0_ghz", m.f0.ghz()}};
            } else {
                params = {{"alpha", m.alpha}, {"beta", m.beta}, {"gamma", m.gamma}};
            }
        },
        r.model);
    j["params"] = params;
    j["sf_sigma_db"] = r.sf_sigma;
    j["residual_mean_db"] = r.residual_mean;
    j["residual_std_db"] = r.residual_std;
    j["mse_db2"] = r.mse;
    j["rmse_db"] = std::sqrt(r.mse);
    j["sample_count"] = r.sample_count;
    j["total_weight"] = r.total_weight;
    j["warnings"] = r.warnings;
    return j;
}

json to_json(const LosFitResult& r)
{
    json bins = json::array();
    for (const auto& b : r.bins)
        bins.push_back({{"d_lo", b.d_lo}, {"d_hi", b.d_hi}, {"d_mean", b.d_mean}, {"count", b.count},
                        {"los_count", b.los_count}, {"p_hat", b.p_hat}});
    return {{"model", std::string(los_fit_model_name(r.model))},
            {"d1", r.params.d1},
            {"d2", r.params.d2},
            {"mse", r.mse},
            {"degenerate", r.degenerate},
            {"note", r.note},
            {"bin_width_m", r.bin_width_m},
            {"bins", bins}};
}

json to_json(const LosComparison& c)
{
    json rows = json::array();
    for (const auto& r : c.rows)
        rows.push_back({{"model", r.name}, {"d1", r.params.d1}, {"d2", r.params.d2}, {"mse", r.mse}});
    return {{"rows", rows}, {"bin_width_m", c.bin_width_m}, {"bin_count", c.bin_count}};
}

BuildingMap map_from_json(const json& j)
{
    check_keys(j, {"polygons"}, "map");
    if (!j.contains("polygons") || !j["polygons"].is_array())
        throw ValidationError("map: 'polygons' must be an array");
    std::vector<Polygon> polys;
    std::size_t i = 0;
    for (const auto& p : j["polygons"]) {
        try {
            polys.emplace_back(points_from_json(p));
        } catch (const ValidationError& e) {
            throw ValidationError("map: polygon " + std::to_string(i) + ": " + e.what());
        }
        ++i;
    }
    return BuildingMap(std::move(polys));
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

BuildingMap load_map_file(const std::string& path)
{
    return map_from_json(read_json_file(path));
}

json to_json(const BuildingMap& m)
{
    json polys = json::array();
    for (const auto& p : m.polygons()) {
        json verts = json::array();
        for (const auto& v : p.vertices())
            verts.push_back(to_json(v));
        polys.push_back(verts);
    }
    return {{"polygons", polys}};
}

json to_json(const LosModel& m)
{
    struct V {
        json operator()(const LosD1D2& x) const { return {{"type", "d1d2"}, {"d1", x.params.d1}, {"d2", x.params.d2}}; }
        json operator()(const LosNyuSquared& x) const
        {
            return {{"type", "nyu_squared"}, {"d1", x.params.d1}, {"d2", x.params.d2}};
        }
        json operator()(const LosUma3gpp& x) const { return {{"type", "3gpp_uma"}, {"h_ut_m", x.h_ut_m}}; }
    };
    return std::visit(V{}, m);
}

LosModel los_model_from_json(const json& j)
{
    check_keys(j, {"type", "d1", "d2", "h_ut_m"}, "los_model");
    const auto type = get_or<std::string>(j, "type", "");
    if (type == "d1d2")
        return LosD1D2{{get_or(j, "d1", 18.0), get_or(j, "d2", 63.0)}};
    if (type == "nyu_squared")
        return LosNyuSquared{{get_or(j, "d1", 18.0), get_or(j, "d2", 63.0)}};
    if (type == "3gpp_uma")
        return LosUma3gpp{get_or(j, "h_ut_m", 1.5)};
    throw ValidationError("los_model: type must be d1d2, nyu_squared or 3gpp_uma");
}

DropConfig drop_config_from_json(const json& j)
{
    check_keys(j,
               {"environment", "los_scenario", "nlos_scenario", "frequency_ghz", "pl_model", "placement",
                "ap_positions", "los_mode", "los_model", "ue_height_m", "indoor_fraction", "high_loss_fraction",
                "o2i", "max_indoor_depth_m", "max_incidence_deg", "shadow_fading", "los_bin_width_m", "seed",
                "threads"},
               "drop config");
    DropConfig c;
    if (j.contains("environment")) {
        const auto env = j["environment"].get<std::string>();
        c.los_scenario = parse_scenario(env + "-los");
        c.nlos_scenario = parse_scenario(env + "-nlos");
    }
    if (j.contains("los_scenario"))
        c.los_scenario = parse_scenario(j["los_scenario"].get<std::string>());
    if (j.contains("nlos_scenario"))
        c.nlos_scenario = parse_scenario(j["nlos_scenario"].get<std::string>());
    c.frequency = Frequency(get_or(j, "frequency_ghz", c.frequency.ghz()));
    if (j.contains("pl_model"))
        c.pl_model = parse_model_kind(j["pl_model"].get<std::string>());

    if (j.contains("placement")) {
        const auto& p = j["placement"];
        check_keys(p, {"type", "ue_count", "radius_m", "min_distance_m", "center", "positions"}, "placement");
        const auto type = get_or<std::string>(p, "type", "disc");
        if (type == "disc") {
            c.placement = Placement::UniformDisc;
            c.ue_count = get_or<std::size_t>(p, "ue_count", c.ue_count);
            c.disc_radius_m = get_or(p, "radius_m", c.disc_radius_m);
            c.min_distance_m = get_or(p, "min_distance_m", c.min_distance_m);
            if (p.contains("center"))
                c.disc_center = point_from_json(p["center"]);
        } else if (type == "explicit") {
            c.placement = Placement::Explicit;
            c.ue_positions = points_from_json(p.value("positions", json::array()));
            c.ue_count = c.ue_positions.size();
        } else {
            throw ValidationError("placement: type must be disc or explicit");
        }
    }
    if (j.contains("ap_positions"))
        c.ap_positions = points_from_json(j["ap_positions"]);
    if (j.contains("los_mode")) {
        const auto m = j["los_mode"].get<std::string>();
        if (m == "map")
            c.los_mode = LosMode::Map;
        else if (m == "stochastic")
            c.los_mode = LosMode::Stochastic;
        else
            throw ValidationError("los_mode must be map or stochastic");
    }
    c.ue_height_m = get_or(j, "ue_height_m", c.ue_height_m);
    if (j.contains("los_model") && !j["los_model"].is_null())
        c.los_model = los_model_from_json(j["los_model"]);
    c.indoor_fraction = get_or(j, "indoor_fraction", c.indoor_fraction);
    c.high_loss_fraction = get_or(j, "high_loss_fraction", c.high_loss_fraction);
    if (j.contains("o2i")) {
        const auto& o = j["o2i"];
        check_keys(o, {"incidence_surcharge_max_db", "depth_loss_db_per_m"}, "o2i");
        c.o2i.incidence_surcharge_max_db = get_or(o, "incidence_surcharge_max_db", c.o2i.incidence_surcharge_max_db);
        c.o2i.depth_loss_db_per_m = get_or(o, "depth_loss_db_per_m", c.o2i.depth_loss_db_per_m);
    }
    c.max_indoor_depth_m = get_or(j, "max_indoor_depth_m", c.max_indoor_depth_m);
    c.max_incidence_deg = get_or(j, "max_incidence_deg", c.max_incidence_deg);
    if (j.contains("shadow_fading")) {
        const auto& s = j["shadow_fading"];
        check_keys(s, {"mode", "decorrelation_m", "sigma_db"}, "shadow_fading");
        const auto mode = get_or<std::string>(s, "mode", "iid");
        if (mode == "iid")
            c.sf_mode = SfMode::Iid;
        else if (mode == "exp_correlated")
            c.sf_mode = SfMode::ExpCorrelated;
        else
            throw ValidationError("shadow_fading: mode must be iid or exp_correlated");
        c.decorrelation_m = get_or(s, "decorrelation_m", c.decorrelation_m);
        if (s.contains("sigma_db") && !s["sigma_db"].is_null())
            c.sf_sigma_db = s["sigma_db"].get<double>();
    }
    c.los_bin_width_m = get_or(j, "los_bin_width_m", c.los_bin_width_m);
    c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
    c.threads = get_or<unsigned>(j, "threads", c.threads);
    return c;
}

json to_json(const DropConfig& c)
{
    json j;
    j["los_scenario"] = std::string(scenario_name(c.los_scenario));
    j["nlos_scenario"] = std::string(scenario_name(c.nlos_scenario));
    j["frequency_ghz"] = c.frequency.ghz();
    j["pl_model"] = std::string(model_kind_name(c.pl_model));
    if (c.placement == Placement::UniformDisc) {
        j["placement"] = {{"type", "disc"},
                          {"ue_count", c.ue_count},
                          {"radius_m", c.disc_radius_m},
                          {"min_distance_m", c.min_distance_m},
                          {"center", to_json(c.disc_center)}};
    } else {
        json pos = json::array();
        for (const auto& p : c.ue_positions)
            pos.push_back(to_json(p));
        j["placement"] = {{"type", "explicit"}, {"positions", pos}};
    }
    json aps = json::array();
    for (const auto& p : c.ap_positions)
        aps.push_back(to_json(p));
    j["ap_positions"] = aps;
    j["los_mode"] = c.los_mode == LosMode::Map ? "map" : "stochastic";
    j["los_model"] = to_json(c.effective_los_model());
    j["ue_height_m"] = c.ue_height_m;
    j["indoor_fraction"] = c.indoor_fraction;
    j["high_loss_fraction"] = c.high_loss_fraction;
    j["o2i"] = {{"incidence_surcharge_max_db", c.o2i.incidence_surcharge_max_db},
                {"depth_loss_db_per_m", c.o2i.depth_loss_db_per_m}};
    j["max_indoor_depth_m"] = c.max_indoor_depth_m;
    j["max_incidence_deg"] = c.max_incidence_deg;
    j["shadow_fading"] = {{"mode", c.sf_mode == SfMode::Iid ? "iid" : "exp_correlated"},
                          {"decorrelation_m", c.decorrelation_m},
                          {"sigma_db", c.sf_sigma_db ? json(*c.sf_sigma_db) : json(nullptr)}};
    j["los_bin_width_m"] = c.los_bin_width_m;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    return j;
}

std::string config_hash(const json& j)
{
    // The thread count never changes results, so it stays out of the hash.
    json key = j;
    if (key.is_object())
        key.erase("threads");
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : key.dump()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json drop_summary_json(const DropResult& r, std::span<const double> percentiles)
{
    const json cfg = to_json(r.config);
    json bins = json::array();
    for (const auto& b : r.los_bins)
        bins.push_back({{"d_lo", b.d_lo},
                        {"d_hi", b.d_hi},
                        {"count", b.count},
                        {"los_count", b.los_count},
                        {"los_fraction", b.fraction},
                        {"model_probability", number_or_null(b.expected)}});
    json cdf = json::array();
    if (!r.links.empty())
        for (const auto& row : coupling_loss_cdf(r, percentiles))
            cdf.push_back({{"percentile", row.percentile}, {"coupling_loss_db", row.value_db}});
    return {{"seed", r.config.seed},
            {"config_hash", config_hash(cfg)},
            {"config", cfg},
            {"link_count", r.links.size()},
            {"indoor_links", r.indoor_links},
            {"los_fraction", r.los_fraction},
            {"los_vs_distance", bins},
            {"coupling_loss_cdf", cdf}};
}

void write_links_csv(std::ostream& out, const DropResult& r)
{
    out << "# seed=" << r.config.seed << "\n";
    out << "# config_hash=" << config_hash(to_json(r.config)) << "\n";
    out << "ue,ap,x_m,y_m,d2d_m,indoor,bpl_class,depth_m,incidence_deg,los_distance_m,p_los,los,pl_db,sf_db,o2i_db,"
           "coupling_loss_db\n";
    for (const auto& l : r.links) {
        out << l.ue << ',' << l.ap << ',' << format_number(l.ue_pos.x) << ',' << format_number(l.ue_pos.y) << ','
            << format_number(l.d2d_m) << ',' << (l.indoor ? 1 : 0) << ',' << bpl_class_name(l.bpl_class) << ','
            << format_number(l.depth_m) << ',' << format_number(l.incidence_deg) << ','
            << format_number(l.los_distance_m) << ',' << (std::isfinite(l.p_los) ? format_number(l.p_los) : "")
            << ',' << (l.los ? 1 : 0) << ',' << format_number(l.pl_db) << ',' << format_number(l.sf_db) << ','
            << format_number(l.o2i_db) << ',' << format_number(l.coupling_loss_db) << '\n';
    }
}

json to_json(const ClusterSet& cs)
{
    json clusters = json::array();
    for (std::size_t i = 0; i < cs.clusters.size(); ++i) {
        const auto& c = cs.clusters[i];
        clusters.push_back({{"cluster", i},
                            {"ray_count", c.ray_count},
                            {"pruned_count", c.pruned_count},
                            {"power", c.power},
                            {"total_power", c.total_power},
                            {"delay_ns", c.delay_ns},
                            {"aod_az_deg", c.aod_az_deg},
                            {"aod_el_deg", c.aod_el_deg},
                            {"aoa_az_deg", c.aoa_az_deg},
                            {"aoa_el_deg", c.aoa_el_deg}});
    }
    return {{"cluster_count", cs.cluster_count()},
            {"zeta", cs.zeta},
            {"delay_norm_ns", cs.delay_norm_ns},
            {"objective", cs.objective},
            {"iterations", cs.iterations},
            {"clusters", clusters}};
}

json to_json(const SpreadSet& s)
{
    json j = {{"ray_count", s.ray_count},
              {"power", s.power},
              {"rms_delay_spread_ns", s.rms_delay_spread_ns},
              {"asd_az_deg", s.asd_az_deg},
              {"asa_az_deg", s.asa_az_deg},
              {"asd_el_deg", s.asd_el_deg},
              {"asa_el_deg", s.asa_el_deg}};
    if (s.xpr)
        j["xpr"] = {{"mean_db", s.xpr->mean_db}, {"std_db", s.xpr->std_db}, {"count", s.xpr->count}};
    else
        j["xpr"] = nullptr;
    return j;
}

json to_json(const SpreadReport& r)
{
    json per = json::array();
    for (const auto& s : r.per_cluster)
        per.push_back(to_json(s));
    return {{"global", to_json(r.global)}, {"per_cluster", per}};
}

} // namespace chanlab
