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

#include "chanlab/penetration.hpp"

#include "chanlab/error.hpp"

#include <cmath>
#include <string>

namespace chanlab {

std::string_view bpl_class_name(BplClass c)
{
    return c == BplClass::LowLoss ? "low" : "high";
}

BplClass parse_bpl_class(std::string_view name)
{
    if (name == "low" || name == "low-loss")
        return BplClass::LowLoss;
    if (name == "high" || name == "high-loss")
        return BplClass::HighLoss;
    throw ValidationError("unknown building class '" + std::string(name) + "' (expected low or high)");
}

void O2iConfig::validate() const
{
    if (!(depth_loss_db_per_m >= 0.2 && depth_loss_db_per_m <= 2.0))
        throw ValidationError("indoor depth loss must lie in [0.2, 2] dB/m, got " +
                              std::to_string(depth_loss_db_per_m));
    if (!(incidence_surcharge_max_db >= 0.0 && incidence_surcharge_max_db <= 20.0))
        throw ValidationError("incidence surcharge must lie in [0, 20] dB, got " +
                              std::to_string(incidence_surcharge_max_db));
}

double bpl(BplClass c, Frequency f)
{
    if (!(f.ghz() > 0.0))
        throw ValidationError("frequency must be positive");
    const auto [a, b] = bpl_coefficients(c);
    return 10.0 * std::log10(a + b * f.ghz() * f.ghz());
}

double incidence_surcharge(double incidence_deg, const O2iConfig& cfg)
{
    if (!(incidence_deg >= 0.0 && incidence_deg < 90.0))
        throw ValidationError("incidence angle must lie in [0, 90) degrees, got " + std::to_string(incidence_deg));
    if (incidence_deg == 0.0)
        return 0.0;
    return cfg.incidence_surcharge_max_db * (1.0 - std::cos(incidence_deg * pi / 180.0));
}

double o2i_loss(BplClass c, Frequency f, double depth_m, double incidence_deg, const O2iConfig& cfg)
{
    cfg.validate();
    if (!(depth_m >= 0.0) || !std::isfinite(depth_m))
        throw ValidationError("indoor depth must be non-negative");
    return bpl(c, f) + incidence_surcharge(incidence_deg, cfg) + cfg.depth_loss_db_per_m * depth_m;
}

} // namespace chanlab
