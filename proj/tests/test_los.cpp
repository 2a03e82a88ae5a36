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

#include "chanlab/error.hpp"
#include "chanlab/los.hpp"

#include <cmath>

using namespace chanlab;

TEST_CASE("d1/d2 reference values")
{
    CHECK(p_los_d1d2({18.0, 36.0}, 100.0) == doctest::Approx(0.230985).epsilon(1e-5));
    CHECK(p_los_nyu_squared({20.0, 160.0}, 100.0) == doctest::Approx(0.394647).epsilon(1e-5));
}

TEST_CASE("3GPP UMa reference values")
{
    CHECK(p_los_3gpp_uma(200.0, 1.5) == doctest::Approx(0.128048).epsilon(1e-5));
    CHECK(uma_g(200.0) == doctest::Approx(0.0131799).epsilon(1e-5));
    CHECK(p_los_3gpp_uma(200.0, 23.0) == doctest::Approx(0.129735).epsilon(1e-5));
}

TEST_CASE("height correction is zero below the knee and g vanishes up to 18 m")
{
    CHECK(uma_height_correction(200.0, 13.0) == 0.0);
    CHECK(uma_height_correction(200.0, 5.0) == 0.0);
    CHECK(uma_g(18.0) == 0.0);
    CHECK(uma_g(18.0001) > 0.0);
    CHECK_THROWS_AS(p_los_3gpp_uma(100.0, 23.5), ValidationError);
}

TEST_CASE("probability is one inside d1")
{
    for (double d = 0.5; d <= 18.0; d += 0.5) {
        CHECK(p_los_d1d2({18.0, 63.0}, d) == 1.0);
        CHECK(p_los_nyu_squared({18.0, 63.0}, d) == 1.0);
        for (double h : {1.5, 13.0, 18.0, 23.0})
            CHECK(p_los_3gpp_uma(d, h) == 1.0);
    }
}

TEST_CASE("probabilities lie in [0,1] and never increase with distance")
{
    for (double h : {1.5, 10.0, 15.0, 20.0, 23.0}) {
        double prev = 1.0;
        for (double d = 1.0; d < 5000.0; d += 0.25) {
            const double p = p_los_3gpp_uma(d, h);
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
            CHECK(p <= prev);
            if (prev < 1.0)
                CHECK(p < prev);
            prev = p;
        }
    }
    for (const D1D2Params p : {D1D2Params{18, 36}, D1D2Params{18, 63}, D1D2Params{5, 200}}) {
        double prev_a = 1.0, prev_b = 1.0;
        for (double d = 1.0; d < 5000.0; d += 0.5) {
            const double a = p_los_d1d2(p, d);
            const double b = p_los_nyu_squared(p, d);
            CHECK(a <= prev_a);
            CHECK(b <= prev_b);
            CHECK(b <= a);
            CHECK(b >= 0.0);
            prev_a = a;
            prev_b = b;
        }
    }
}

TEST_CASE("NYU-squared is the square of d1/d2")
{
    for (double d = 1.0; d < 1000.0; d *= 1.17)
        CHECK(p_los_nyu_squared({20.0, 160.0}, d) == doctest::Approx(std::pow(p_los_d1d2({20.0, 160.0}, d), 2)));
}

TEST_CASE("tall UEs saturate just beyond d1")
{
    // (1 + C) pushes the product above one before the exponential term decays
    CHECK(p_los_3gpp_uma(18.01, 23.0) == 1.0);
    CHECK(p_los_3gpp_uma(18.01, 1.5) < 1.0);
    CHECK(p_los_3gpp_uma(18.5, 23.0) < 1.0);
}

TEST_CASE("model variant dispatch")
{
    CHECK(p_los(LosD1D2{{18.0, 36.0}}, 100.0) == p_los_d1d2({18.0, 36.0}, 100.0));
    CHECK(p_los(LosNyuSquared{{18.0, 36.0}}, 100.0) == p_los_nyu_squared({18.0, 36.0}, 100.0));
    CHECK(p_los(LosUma3gpp{20.0}, 100.0) == p_los_3gpp_uma(100.0, 20.0));
    CHECK(los_model_name(LosUma3gpp{}) == "3gpp_uma");
    CHECK_THROWS_AS(p_los_d1d2({0.0, 36.0}, 10.0), ValidationError);
    CHECK_THROWS_AS(p_los_d1d2({18.0, 36.0}, 0.0), ValidationError);
}

TEST_CASE("indoor UEs use the outer wall distance")
{
    static_assert(indoor_effective_distance(42.0) == 42.0);
}

TEST_CASE("probabilities vanish far away")
{
    CHECK(p_los_d1d2({18.0, 36.0}, 1e6) < 1e-4);
    CHECK(p_los_nyu_squared({18.0, 36.0}, 1e6) < 1e-8);
    CHECK(p_los_3gpp_uma(1e6, 23.0) < 1e-4);
}

TEST_CASE("UMa height correction is continuous at 13 m")
{
    for (double d = 1.0; d < 2000.0; d *= 1.11)
        CHECK(p_los_3gpp_uma(d, 13.0) == p_los_3gpp_uma(d, 1.5));
}

TEST_CASE("indoor UEs evaluated at the wall distance")
{
    CHECK(p_los_3gpp_uma(indoor_effective_distance(18.0), 1.5) == 1.0);
    CHECK(p_los_d1d2(umi_3gpp_params, indoor_effective_distance(100.0)) == doctest::Approx(0.2310).epsilon(0.002));
}
