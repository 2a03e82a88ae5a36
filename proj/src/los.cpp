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

#include "chanlab/los.hpp"

#include "chanlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chanlab {

namespace {

void check_distance(double d_m)
{
    if (!(d_m > 0.0) || !std::isfinite(d_m))
        throw ValidationError("LOS probability distance must be positive, got " + std::to_string(d_m));
}

void check_params(const D1D2Params& p)
{
    if (!(p.d1 > 0.0) || !(p.d2 > 0.0))
        throw ValidationError("LOS model parameters d1 and d2 must be positive");
}

} // namespace

double p_los_d1d2(const D1D2Params& p, double d_m)
{
    check_distance(d_m);
    check_params(p);
    if (d_m <= p.d1)
        return 1.0;
    const double e = std::exp(-d_m / p.d2);
    return (p.d1 / d_m) * (1.0 - e) + e;
}

double p_los_nyu_squared(const D1D2Params& p, double d_m)
{
    const double v = p_los_d1d2(p, d_m);
    return v * v;
}

double uma_g(double d_m)
{
    if (d_m > 18.0)
        return 1.25e-6 * d_m * d_m * std::exp(-d_m / 150.0);
    return 0.0;
}

double uma_height_correction(double d_m, double h_ut_m)
{
    if (!(h_ut_m > 0.0))
        throw ValidationError("UE height must be positive");
    if (h_ut_m > uma_height_max_m)
        throw ValidationError("3GPP UMa LOS model is defined for UE heights up to 23 m, got " +
                              std::to_string(h_ut_m) + " m");
    if (h_ut_m < uma_height_knee_m)
        return 0.0;
    return std::pow((h_ut_m - uma_height_knee_m) / 10.0, 1.5) * uma_g(d_m);
}

double p_los_3gpp_uma(double d_m, double h_ut_m)
{
    check_distance(d_m);
    const double c = uma_height_correction(d_m, h_ut_m);
    return std::min(1.0, p_los_d1d2(uma_3gpp_params, d_m) * (1.0 + c));
}

double p_los(const LosModel& model, double d_m)
{
    struct Eval {
        double d;
        double operator()(const LosD1D2& m) const { return p_los_d1d2(m.params, d); }
        double operator()(const LosNyuSquared& m) const { return p_los_nyu_squared(m.params, d); }
        double operator()(const LosUma3gpp& m) const { return p_los_3gpp_uma(d, m.h_ut_m); }
    };
    return std::visit(Eval{d_m}, model);
}

std::string_view los_model_name(const LosModel& model)
{
    struct Name {
        std::string_view operator()(const LosD1D2&) const { return "d1d2"; }
        std::string_view operator()(const LosNyuSquared&) const { return "nyu_squared"; }
        std::string_view operator()(const LosUma3gpp&) const { return "3gpp_uma"; }
    };
    return std::visit(Name{}, model);
}

} // namespace chanlab
