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

#include "chanlab/pathloss.hpp"

#include "chanlab/error.hpp"

#include <cmath>
#include <string>

namespace chanlab {

namespace {

void require_positive_frequency(Frequency f)
{
    if (!(f.ghz() > 0.0) || !std::isfinite(f.ghz()))
        throw ValidationError("frequency must be positive, got " + std::to_string(f.ghz()) + " GHz");
}

void require_anchored_distance(double d_m)
{
    if (!(d_m >= 1.0) || !std::isfinite(d_m))
        throw ValidationError("distance " + std::to_string(d_m) +
                              " m is below the 1 m close-in reference distance");
}

} // namespace

double fspl_1m(Frequency f)
{
    require_positive_frequency(f);
    return 20.0 * std::log10(4.0 * pi * f.hz() / speed_of_light);
}

double ci_pl(const CiModel& m, Frequency f, double d_m)
{
    require_anchored_distance(d_m);
    return fspl_1m(f) + 10.0 * m.n * std::log10(d_m);
}

double cif_pl(const CifModel& m, Frequency f, double d_m)
{
    require_anchored_distance(d_m);
    if (!(m.f0.ghz() > 0.0))
        throw ValidationError("CIF reference frequency f0 must be positive");
    const double ple = m.n * (1.0 + m.b * (f.ghz() - m.f0.ghz()) / m.f0.ghz());
    return fspl_1m(f) + 10.0 * ple * std::log10(d_m);
}

double abg_pl(const AbgModel& m, Frequency f, double d_m)
{
    require_positive_frequency(f);
    if (!(d_m >= abg_min_distance_m) || !std::isfinite(d_m))
        throw ValidationError("ABG distance must be at least 0.01 m, got " + std::to_string(d_m));
    return 10.0 * m.alpha * std::log10(d_m) + m.beta + 10.0 * m.gamma * std::log10(f.ghz());
}

Frequency centroid_frequency(std::span<const std::pair<Frequency, double>> points)
{
    if (points.empty())
        throw ValidationError("centroid frequency needs at least one (frequency, count) pair");
    double num = 0.0;
    double den = 0.0;
    for (const auto& [f, count] : points) {
        if (!(count > 0.0))
            throw ValidationError("centroid frequency counts must be positive");
        require_positive_frequency(f);
        num += f.ghz() * count;
        den += count;
    }
    return Frequency(num / den);
}

CiModel ci_model(const ScenarioParams& p)
{
    return CiModel{p.ci_n};
}

AbgModel abg_model(const ScenarioParams& p)
{
    if (!p.abg_available)
        throw ValidationError("ABG parameters for scenario '" + std::string(scenario_name(p.id)) +
                              "' are N/A in the parameter table (LOS scenarios are CI only)");
    return AbgModel{p.abg_alpha, p.abg_beta, p.abg_gamma};
}

} // namespace chanlab
