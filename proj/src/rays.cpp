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

#include "chanlab/rays.hpp"

#include "chanlab/error.hpp"

#include <string>

namespace chanlab {

double wrap_azimuth(double deg)
{
    double w = std::fmod(deg + 180.0, 360.0);
    if (w < 0.0)
        w += 360.0;
    w -= 180.0;
    // fmod rounding can land exactly on +180.
    return w >= 180.0 ? w - 360.0 : w;
}

RayRecord normalized(RayRecord r)
{
    if (!(r.power > 0.0) || !std::isfinite(r.power))
        throw ValidationError("ray power must be positive");
    for (double v : {r.delay_ns, r.aod_az_deg, r.aoa_az_deg, r.aod_el_deg, r.aoa_el_deg})
        if (!std::isfinite(v))
            throw ValidationError("ray delay and angles must be finite");
    for (double el : {r.aod_el_deg, r.aoa_el_deg})
        if (el < -90.0 || el > 90.0)
            throw ValidationError("ray elevation " + std::to_string(el) + " deg is outside [-90, 90]");
    r.aod_az_deg = wrap_azimuth(r.aod_az_deg);
    r.aoa_az_deg = wrap_azimuth(r.aoa_az_deg);
    return r;
}

} // namespace chanlab
