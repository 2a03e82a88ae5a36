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

#ifndef CHANLAB_PATHLOSS_HPP
#define CHANLAB_PATHLOSS_HPP

#include "chanlab/core.hpp"

#include <span>
#include <utility>

namespace chanlab {

/// Close-in free-space reference distance model, anchored at FSPL(f, 1 m).
struct CiModel {
    double n = 2.0; // path loss exponent
};

/// CI with a path loss exponent that varies linearly in frequency around the
/// centroid f0. Reduces to CI when b = 0 or f = f0.
struct CifModel {
    double n = 2.0;
    double b = 0.0;
    Frequency f0{1.0};
};

/// Floating-intercept alpha-beta-gamma model, frequency in GHz.
struct AbgModel {
    double alpha = 2.0;
    double beta = 0.0; // dB
    double gamma = 2.0;
};

// Smallest distance accepted by abg_pl, which has no close-in anchor.
inline constexpr double abg_min_distance_m = 0.01;

/// Free-space path loss at 1 m: 20 log10(4 pi f / c), f in Hz.
double fspl_1m(Frequency f);

double ci_pl(const CiModel& m, Frequency f, double d_m);
double cif_pl(const CifModel& m, Frequency f, double d_m);
double abg_pl(const AbgModel& m, Frequency f, double d_m);

/// Weighted centroid sum(f_k N_k) / sum(N_k) of the frequencies in a pooled
/// data set.
Frequency centroid_frequency(std::span<const std::pair<Frequency, double>> points);

CiModel ci_model(const ScenarioParams& p);
/// Throws ValidationError for LOS scenarios, which carry no ABG fit.
AbgModel abg_model(const ScenarioParams& p);

} // namespace chanlab

#endif
