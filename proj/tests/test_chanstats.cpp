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

#include "chanlab/chanstats.hpp"
#include "chanlab/clustering.hpp"
#include "chanlab/error.hpp"
#include "synth_rays.hpp"

#include <cmath>

using namespace chanlab;

namespace {

RayRecord ray(double delay, double az, double power, double el = 0.0)
{
    RayRecord r;
    r.delay_ns = delay;
    r.aod_az_deg = az;
    r.aoa_az_deg = az;
    r.aod_el_deg = el;
    r.aoa_el_deg = el;
    r.power = power;
    return r;
}

} // namespace

TEST_CASE("two equal rays 100 ns apart spread 50 ns")
{
    const std::vector<RayRecord> rays{ray(0, 0, 1), ray(100, 0, 1)};
    CHECK(rms_delay_spread(rays) == 50.0);
}

TEST_CASE("delay spread of unequal powers")
{
    // p = (3, 1) at (0, 40): mean 10, var (3*100 + 900) / 4 = 300
    const std::vector<RayRecord> rays{ray(0, 0, 3), ray(40, 0, 1)};
    CHECK(rms_delay_spread(rays) == doctest::Approx(std::sqrt(300.0)));
}

TEST_CASE("delay spread is invariant to a common delay offset and power scale")
{
    auto rays = testing::three_groups(1);
    const double base = rms_delay_spread(rays);
    for (auto& r : rays) {
        r.delay_ns += 1e4;
        r.power *= 7.0;
    }
    CHECK(rms_delay_spread(rays) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("single ray has zero spreads")
{
    const std::vector<RayRecord> rays{ray(42, 17, 1, 3)};
    const auto s = compute_spreads(rays);
    CHECK(s.rms_delay_spread_ns == 0.0);
    CHECK(s.asd_az_deg == 0.0);
    CHECK(s.asa_el_deg == 0.0);
}

TEST_CASE("azimuth spread handles the wrap")
{
    const std::vector<RayRecord> a{ray(0, 170, 1), ray(0, -170, 1)};
    CHECK(rms_angle_spread(a, AngleKind::AodAz) == doctest::Approx(10.0));
    const std::vector<RayRecord> b{ray(0, -10, 1), ray(0, 10, 1)};
    CHECK(rms_angle_spread(b, AngleKind::AoaAz) == doctest::Approx(10.0));
}

TEST_CASE("azimuth spread is invariant under rotation")
{
    auto rays = testing::three_groups(2, 10, 30.0);
    const double base = rms_angle_spread(rays, AngleKind::AodAz);
    for (double rot = -180.0; rot < 180.0; rot += 7.3) {
        auto turned = rays;
        for (auto& r : turned)
            r.aod_az_deg = wrap_azimuth(r.aod_az_deg + rot);
        CHECK(std::abs(rms_angle_spread(turned, AngleKind::AodAz) - base) < 1e-9);
    }
}

TEST_CASE("elevation spread is linear")
{
    const std::vector<RayRecord> rays{ray(0, 0, 1, -20), ray(0, 0, 1, 20)};
    CHECK(rms_angle_spread(rays, AngleKind::AodEl) == doctest::Approx(20.0));
}

TEST_CASE("XPR aggregation in dB")
{
    for (double v : {13.87, 7.89}) {
        std::vector<RayRecord> rays;
        for (int i = 0; i < 25; ++i) {
            auto r = ray(i, i, 1.0 + i);
            r.xpr_db = v;
            rays.push_back(r);
        }
        const auto x = xpr_stats(rays);
        REQUIRE(x);
        CHECK(x->mean_db == v);
        CHECK(x->std_db == 0.0);
        CHECK(x->count == 25);
    }
    std::vector<RayRecord> mixed{ray(0, 0, 1), ray(0, 0, 1), ray(0, 0, 1)};
    mixed[0].xpr_db = 10.0;
    mixed[1].xpr_db = 20.0;
    const auto x = xpr_stats(mixed);
    REQUIRE(x);
    CHECK(x->mean_db == doctest::Approx(15.0));
    CHECK(x->std_db == doctest::Approx(5.0));
    CHECK(x->count == 2);
    CHECK_FALSE(xpr_stats(std::vector<RayRecord>{ray(0, 0, 1)}));
}

TEST_CASE("per-cluster report uses retained rays")
{
    const auto rays = testing::three_groups(3);
    ClusteringConfig cfg;
    cfg.restarts = 3;
    const auto res = cluster_multirestart(rays, cfg);
    const auto rep = spread_report(rays, &res.best);
    REQUIRE(rep.per_cluster.size() == res.best.cluster_count());
    std::size_t retained = 0;
    for (const auto& c : rep.per_cluster) {
        retained += c.ray_count;
        CHECK(c.rms_delay_spread_ns < rep.global.rms_delay_spread_ns);
    }
    CHECK(rep.global.ray_count == retained);
}

TEST_CASE("empty input is rejected")
{
    CHECK_THROWS_AS(rms_delay_spread({}), ValidationError);
}

TEST_CASE("co-directional rays have no angle spread")
{
    const std::vector<RayRecord> rays{ray(0, 33, 1), ray(10, 33, 2), ray(20, 33, 3)};
    CHECK(rms_angle_spread(rays, AngleKind::AodAz) == 0.0);
}

TEST_CASE("two equal rays at plus and minus 45 degrees")
{
    const std::vector<RayRecord> rays{ray(0, -45, 1), ray(0, 45, 1)};
    CHECK(rms_angle_spread(rays, AngleKind::AodAz) == doctest::Approx(45.0).epsilon(1e-14));
}
