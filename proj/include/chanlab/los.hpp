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

#ifndef CHANLAB_LOS_HPP
#define CHANLAB_LOS_HPP

#include <string_view>
#include <variant>

namespace chanlab {

struct D1D2Params {
    double d1 = 18.0; // m
    double d2 = 63.0; // m
};

inline constexpr D1D2Params uma_3gpp_params{18.0, 63.0};
inline constexpr D1D2Params umi_3gpp_params{18.0, 36.0};

// UE height range over which the 3GPP UMa height correction is defined [m]
inline constexpr double uma_height_knee_m = 13.0;
inline constexpr double uma_height_max_m = 23.0;

// p(d) = min(d1/d, 1) (1 - exp(-d/d2)) + exp(-d/d2)
double p_los_d1d2(const D1D2Params& p, double d_m);

// Square of p_los_d1d2.
double p_los_nyu_squared(const D1D2Params& p, double d_m);

// The (18, 63) d1/d2 curve scaled by (1 + C(d, h_ut)), clamped to 1. Heights
// above 23 m have no defined branch and are rejected.
double p_los_3gpp_uma(double d_m, double h_ut_m);

// Height correction C(d, h_ut) and its distance factor g(d).
double uma_height_correction(double d_m, double h_ut_m);
double uma_g(double d_m);

// Indoor UEs use the 2D distance to the outer wall in every LOS model.
constexpr double indoor_effective_distance(double d_outer_wall_m) { return d_outer_wall_m; }

/// One configured LOS-probability model.
struct LosD1D2 { D1D2Params params; };
struct LosNyuSquared { D1D2Params params; };
struct LosUma3gpp { double h_ut_m = 1.5; };
using LosModel = std::variant<LosD1D2, LosNyuSquared, LosUma3gpp>;

double p_los(const LosModel& model, double d_m);
std::string_view los_model_name(const LosModel& model);

} // namespace chanlab

#endif
