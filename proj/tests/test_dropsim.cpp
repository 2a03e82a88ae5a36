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

#include <doctest.h>

#include "chanlab/dropsim.hpp"
#include "chanlab/error.hpp"
#include "chanlab/serialize.hpp"

#include <cmath>
#include <sstream>

using namespace chanlab;

namespace {

std::string links_csv(const DropResult& r)
{
    std::ostringstream os;
    write_links_csv(os, r);
    return os.str();
}

double sample_std(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v)
        s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace

TEST_CASE("drops are reproducible and independent of the thread count")
{
    DropConfig cfg;
    cfg.ue_count = 3000;
    cfg.seed = 17;
    cfg.indoor_fraction = 0.4;
    cfg.high_loss_fraction = 0.5;
    cfg.max_incidence_deg = 60.0;
    const auto a = links_csv(run_drop(cfg));
    CHECK(a == links_csv(run_drop(cfg)));
    cfg.threads = 4;
    CHECK(a == links_csv(run_drop(cfg)));
    cfg.seed = 18;
    CHECK(a != links_csv(run_drop(cfg)));
}

TEST_CASE("UE placement stays inside the annulus")
{
    DropConfig cfg;
    cfg.ue_count = 5000;
    cfg.disc_radius_m = 150.0;
    cfg.min_distance_m = 20.0;
    cfg.disc_center = {50.0, -30.0};
    cfg.ap_positions = {{50.0, -30.0}};
    const auto r = run_drop(cfg);
    int inner = 0;
    for (const auto& l : r.links) {
        CHECK(l.d2d_m >= 20.0);
        CHECK(l.d2d_m <= 150.0);
        inner += l.d2d_m < 85.0 ? 1 : 0;
    }
    // uniform in area: P(d < 85) = (85^2 - 20^2) / (150^2 - 20^2)
    const double p = (85.0 * 85.0 - 400.0) / (22500.0 - 400.0);
    CHECK(std::abs(inner / 5000.0 - p) < 4.0 * std::sqrt(p * (1 - p) / 5000.0));
}

TEST_CASE("indoor links carry penetration loss")
{
    DropConfig cfg;
    cfg.ue_count = 4000;
    cfg.indoor_fraction = 0.3;
    cfg.seed = 3;
    const auto r = run_drop(cfg);
    CHECK(std::abs(static_cast<double>(r.indoor_links) / 4000.0 - 0.3) < 0.03);
    for (const auto& l : r.links) {
        if (l.indoor) {
            CHECK(l.o2i_db >= bpl(l.bpl_class, cfg.frequency) - 1e-12);
            CHECK(l.depth_m <= cfg.max_indoor_depth_m);
        } else {
            CHECK(l.o2i_db == 0.0);
        }
        CHECK(l.coupling_loss_db == doctest::Approx(l.pl_db + l.sf_db + l.o2i_db));
    }
}

TEST_CASE("shadow fading std follows the scenario sigma")
{
    DropConfig cfg;
    cfg.ue_count = 20000;
    cfg.seed = 5;
    const auto r = run_drop(cfg);
    std::vector<double> los, nlos;
    for (const auto& l : r.links)
        (l.los ? los : nlos).push_back(l.sf_db);
    CHECK(std::abs(sample_std(nlos) - 6.8) < 0.15);
    CHECK(std::abs(sample_std(los) - 4.1) < 0.25);
}

TEST_CASE("correlated field has unit variance and exponential correlation")
{
    const double L = 20.0;
    double s1 = 0.0, s2 = 0.0, c_near = 0.0, c_far = 0.0;
    const int fields = 400;
    for (int k = 0; k < fields; ++k) {
        const CorrelatedField f(static_cast<std::uint64_t>(k), L);
        const double a = f({0.0, 0.0});
        s1 += a;
        s2 += a * a;
        c_near += a * f({L, 0.0});
        c_far += a * f({0.0, 5.0 * L});
    }
    CHECK(std::abs(s1 / fields) < 0.15);
    CHECK(std::abs(s2 / fields - 1.0) < 0.2);
    CHECK(std::abs(c_near / fields - std::exp(-1.0)) < 0.15);
    CHECK(std::abs(c_far / fields) < 0.15);
}

TEST_CASE("a uniform loss offset shifts every percentile")
{
    DropConfig cfg;
    cfg.ue_count = 2000;
    cfg.seed = 9;
    const auto a = run_drop(cfg);
    cfg.frequency = Frequency(56.0); // + 20 log10(2) on every link
    const auto b = run_drop(cfg);
    const std::vector<double> pct{1, 5, 50, 95, 99};
    const auto ca = coupling_loss_cdf(a, pct);
    const auto cb = coupling_loss_cdf(b, pct);
    for (std::size_t i = 0; i < pct.size(); ++i)
        CHECK(cb[i].value_db - ca[i].value_db == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
}

TEST_CASE("nearest-rank percentiles")
{
    DropConfig cfg;
    cfg.ue_count = 10;
    const auto r = run_drop(cfg);
    const std::vector<double> pct{0, 10, 50, 100};
    const auto c = coupling_loss_cdf(r, pct);
    CHECK(c[0].value_db == r.coupling_loss_sorted.front());
    CHECK(c[1].value_db == r.coupling_loss_sorted[0]);
    CHECK(c[2].value_db == r.coupling_loss_sorted[4]);
    CHECK(c[3].value_db == r.coupling_loss_sorted.back());
    const std::vector<double> bad{101};
    CHECK_THROWS_AS(coupling_loss_cdf(r, bad), ValidationError);
}

TEST_CASE("map mode follows the geometry")
{
    const BuildingMap map({Polygon({{20, -10}, {40, -10}, {40, 10}, {20, 10}}),
                           Polygon({{-60, 30}, {-20, 30}, {-20, 60}, {-60, 60}})});
    DropConfig cfg;
    cfg.los_mode = LosMode::Map;
    cfg.ue_count = 3000;
    cfg.disc_radius_m = 100.0;
    cfg.seed = 21;
    const auto r = run_drop(cfg, &map);
    std::size_t indoor = 0;
    for (const auto& l : r.links) {
        CHECK(l.los == map.is_los({0, 0}, l.ue_pos));
        CHECK(l.indoor == map.locate(l.ue_pos).indoor);
        CHECK(std::isnan(l.p_los));
        if (l.indoor) {
            ++indoor;
            const auto w = map.outer_wall_distance({0, 0}, l.ue_pos);
            CHECK(l.depth_m == doctest::Approx(w.depth));
            CHECK(l.los_distance_m == doctest::Approx(w.wall_distance));
        }
    }
    CHECK(indoor > 0);
}

TEST_CASE("configuration validation")
{
    const BuildingMap map({Polygon({{20, -10}, {40, -10}, {40, 10}, {20, 10}})});
    DropConfig cfg;
    CHECK_THROWS_AS(run_drop(cfg, &map), ValidationError);
    cfg.los_mode = LosMode::Map;
    CHECK_THROWS_AS(run_drop(cfg), ValidationError);
    cfg = {};
    cfg.pl_model = PlModelKind::CIF;
    CHECK_THROWS_AS(cfg.validate(false), ValidationError);
    cfg = {};
    cfg.nlos_scenario = ScenarioId::UMiStreetCanyonNLOS;
    CHECK_THROWS_AS(cfg.validate(false), ValidationError);
    cfg = {};
    cfg.sf_mode = SfMode::ExpCorrelated;
    CHECK_THROWS_AS(cfg.validate(false), ValidationError);
    cfg = {};
    cfg.indoor_fraction = 1.5;
    CHECK_THROWS_AS(cfg.validate(false), ValidationError);
}

TEST_CASE("default LOS model follows the environment")
{
    DropConfig cfg;
    CHECK(std::holds_alternative<LosUma3gpp>(cfg.effective_los_model()));
    cfg.los_scenario = ScenarioId::UMiStreetCanyonLOS;
    cfg.nlos_scenario = ScenarioId::UMiStreetCanyonNLOS;
    const auto m = cfg.effective_los_model();
    REQUIRE(std::holds_alternative<LosD1D2>(m));
    CHECK(std::get<LosD1D2>(m).params.d2 == 36.0);
}

TEST_CASE("config JSON round trip")
{
    DropConfig cfg;
    cfg.indoor_fraction = 0.2;
    cfg.sf_mode = SfMode::ExpCorrelated;
    cfg.decorrelation_m = 37.0;
    cfg.seed = 1234;
    const json j = to_json(cfg);
    const DropConfig back = drop_config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(config_hash(j) == config_hash(to_json(back)));
    json bad = j;
    bad["unknown_key"] = 1;
    CHECK_THROWS_AS(drop_config_from_json(bad), ValidationError);
}

TEST_CASE("UMi LOS fraction around 100 m matches the model")
{
    DropConfig cfg;
    cfg.los_scenario = ScenarioId::UMiStreetCanyonLOS;
    cfg.nlos_scenario = ScenarioId::UMiStreetCanyonNLOS;
    cfg.ue_count = 100000;
    cfg.seed = 100;
    cfg.threads = 4;
    const auto r = run_drop(cfg);
    std::size_t n = 0, los = 0;
    for (const auto& l : r.links)
        if (l.d2d_m >= 95.0 && l.d2d_m < 105.0) {
            ++n;
            los += l.los ? 1 : 0;
        }
    REQUIRE(n > 1000);
    CHECK(std::abs(static_cast<double>(los) / static_cast<double>(n) - 0.231) <= 0.02);
}

TEST_CASE("outdoor-only drops carry no penetration loss")
{
    DropConfig cfg;
    cfg.ue_count = 2000;
    const auto r = run_drop(cfg);
    for (const auto& l : r.links)
        CHECK(l.o2i_db == 0.0);
}

TEST_CASE("a constant-loss drop has flat percentiles")
{
    DropConfig cfg;
    cfg.placement = Placement::Explicit;
    cfg.ue_positions = std::vector<Point2>(50, Point2{30.0, 40.0});
    cfg.sf_sigma_db = 0.0;
    cfg.los_model = LosD1D2{{100.0, 50.0}}; // always LOS at 50 m
    const auto r = run_drop(cfg);
    const std::vector<double> pct{0, 10, 50, 90, 100};
    for (const auto& row : coupling_loss_cdf(r, pct))
        CHECK(row.value_db == r.links[0].coupling_loss_db);
}
