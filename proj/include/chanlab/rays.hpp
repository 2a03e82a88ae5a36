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

#ifndef CHANLAB_RAYS_HPP
#define CHANLAB_RAYS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace chanlab {

/// One multipath component. Angles in degrees, power in linear units.
struct RayRecord {
    std::string link_id;
    double delay_ns = 0.0;
    double aod_az_deg = 0.0;
    double aod_el_deg = 0.0;
    double aoa_az_deg = 0.0;
    double aoa_el_deg = 0.0;
    double power = 1.0;
    std::optional<double> xpr_db;
};

// Wraps to [-180, 180).
double wrap_azimuth(double deg);

/// Wraps azimuths and checks power > 0 and elevations in [-90, 90]; throws
/// ValidationError otherwise.
RayRecord normalized(RayRecord r);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace chanlab

#endif
