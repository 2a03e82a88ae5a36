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

#ifndef CHANLAB_CORE_HPP
#define CHANLAB_CORE_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace chanlab {

// Physical constants
inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = 3.14159265358979323846;

// Band over which the catalog parameters are valid [GHz]
inline constexpr double band_min_ghz = 0.5;
inline constexpr double band_max_ghz = 100.0;

/// Carrier frequency. Stored in GHz everywhere; Hz only on request.
class Frequency {
public:
    constexpr Frequency() = default;
    constexpr explicit Frequency(double ghz) : ghz_(ghz) {}

    static constexpr Frequency from_ghz(double ghz) { return Frequency(ghz); }
    static constexpr Frequency from_hz(double hz) { return Frequency(hz * 1e-9); }

    constexpr double ghz() const { return ghz_; }
    constexpr double hz() const { return ghz_ * 1e9; }

    friend constexpr auto operator<=>(const Frequency&, const Frequency&) = default;

private:
    double ghz_ = 0.0;
};

/// Returns a warning message when f lies outside [0.5, 100] GHz. Formulas stay
/// defined for any f > 0, so this never throws.
std::optional<std::string> band_warning(Frequency f);

enum class ScenarioId {
    UMaLOS,
    UMaNLOS,
    UMiStreetCanyonLOS,
    UMiStreetCanyonNLOS,
    UMiOpenSquareLOS,
    UMiOpenSquareNLOS,
};

inline constexpr std::array<ScenarioId, 6> all_scenarios = {
    ScenarioId::UMaLOS,           ScenarioId::UMaNLOS,
    ScenarioId::UMiStreetCanyonLOS, ScenarioId::UMiStreetCanyonNLOS,
    ScenarioId::UMiOpenSquareLOS, ScenarioId::UMiOpenSquareNLOS,
};

enum class Environment { UMa, UMiStreetCanyon, UMiOpenSquare };

Environment environment_of(ScenarioId id);
bool is_los_scenario(ScenarioId id);

/// Short CLI-facing name, e.g. "uma-los", "umi-sc-nlos", "umi-os-los".
std::string_view scenario_name(ScenarioId id);
/// Inverse of scenario_name; throws ValidationError on unknown names.
ScenarioId parse_scenario(std::string_view name);

/// Per-scenario parameter bundle: CI and ABG path loss with their shadow
/// fading deviations, and the d1/d2 LOS-probability pair of the environment.
struct ScenarioParams {
    ScenarioId id{};
    double ci_n = 0.0;
    double ci_sigma = 0.0; // dB
    bool abg_available = false;
    double abg_alpha = 0.0;
    double abg_beta = 0.0; // dB
    double abg_gamma = 0.0;
    double abg_sigma = 0.0; // dB
    double los_d1 = 0.0;    // m
    double los_d2 = 0.0;    // m
};

const ScenarioParams& catalog_lookup(ScenarioId id);

} // namespace chanlab

#endif
