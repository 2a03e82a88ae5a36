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

#include "chanlab/core.hpp"

#include "chanlab/error.hpp"

#include <cstdio>

namespace chanlab {

namespace {

// UMa uses the 3GPP (18, 63) LOS pair, both UMi sub-scenarios share (18, 36).
constexpr std::array<ScenarioParams, 6> catalog = {{
    {ScenarioId::UMaLOS, 2.0, 4.1, false, 0.0, 0.0, 0.0, 0.0, 18.0, 63.0},
    {ScenarioId::UMaNLOS, 3.0, 6.8, true, 3.4, 19.2, 2.3, 6.5, 18.0, 63.0},
    {ScenarioId::UMiStreetCanyonLOS, 1.98, 3.1, false, 0.0, 0.0, 0.0, 0.0, 18.0, 36.0},
    {ScenarioId::UMiStreetCanyonNLOS, 3.19, 8.2, true, 3.48, 21.02, 2.34, 7.8, 18.0, 36.0},
    {ScenarioId::UMiOpenSquareLOS, 1.85, 4.2, false, 0.0, 0.0, 0.0, 0.0, 18.0, 36.0},
    {ScenarioId::UMiOpenSquareNLOS, 2.89, 7.1, true, 4.14, 3.66, 2.43, 7.0, 18.0, 36.0},
}};

constexpr std::array<std::string_view, 6> names = {
    "uma-los", "uma-nlos", "umi-sc-los", "umi-sc-nlos", "umi-os-los", "umi-os-nlos",
};

} // namespace

std::optional<std::string> band_warning(Frequency f)
{
    if (f.ghz() >= band_min_ghz && f.ghz() <= band_max_ghz)
        return std::nullopt;
    char buf[128];
    std::snprintf(buf, sizeof buf, "frequency %.6g GHz is outside the 0.5-100 GHz model band", f.ghz());
    return std::string(buf);
}

Environment environment_of(ScenarioId id)
{
    switch (id) {
    case ScenarioId::UMaLOS:
    case ScenarioId::UMaNLOS:
        return Environment::UMa;
    case ScenarioId::UMiStreetCanyonLOS:
    case ScenarioId::UMiStreetCanyonNLOS:
        return Environment::UMiStreetCanyon;
    case ScenarioId::UMiOpenSquareLOS:
    case ScenarioId::UMiOpenSquareNLOS:
        return Environment::UMiOpenSquare;
    }
    throw ValidationError("unknown scenario id");
}

bool is_los_scenario(ScenarioId id)
{
    return !catalog_lookup(id).abg_available;
}

std::string_view scenario_name(ScenarioId id)
{
    return names.at(static_cast<std::size_t>(id));
}

ScenarioId parse_scenario(std::string_view name)
{
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return all_scenarios[i];
    throw ValidationError("unknown scenario '" + std::string(name) +
                          "' (expected uma-los, uma-nlos, umi-sc-los, umi-sc-nlos, umi-os-los, umi-os-nlos)");
}

const ScenarioParams& catalog_lookup(ScenarioId id)
{
    return catalog.at(static_cast<std::size_t>(id));
}

} // namespace chanlab
