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

#ifndef CHANLAB_CHANSTATS_HPP
#define CHANLAB_CHANSTATS_HPP

#include "chanlab/clustering.hpp"
#include "chanlab/rays.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace chanlab {

/// Power-weighted RMS delay spread [ns] (linear powers).
double rms_delay_spread(std::span<const RayRecord> rays);

enum class AngleKind { AodAz, AoaAz, AodEl, AoaEl };

std::string_view angle_kind_name(AngleKind k);

/// Power-weighted RMS angle spread [deg].
///
/// Azimuths wrap, so the spread is the smallest second central moment over
/// all placements of the wrap cut (equivalently over all rotations of the
/// circle). Only cuts in the gaps between rays matter, which makes the search
/// exact. The result is below 180 deg. Elevations live on [-90, 90] and use
/// the plain weighted deviation (at most 90 deg).
double rms_angle_spread(std::span<const RayRecord> rays, AngleKind which);

/// Cross-polarization ratio statistics, averaged in dB (not linear power).
struct XprStats {
    double mean_db = 0.0;
    double std_db = 0.0; // population
    std::size_t count = 0;
};

/// nullopt when no ray carries an XPR value.
std::optional<XprStats> xpr_stats(std::span<const RayRecord> rays);

struct SpreadSet {
    std::size_t ray_count = 0;
    double power = 0.0;
    double rms_delay_spread_ns = 0.0;
    double asd_az_deg = 0.0;
    double asa_az_deg = 0.0;
    double asd_el_deg = 0.0;
    double asa_el_deg = 0.0;
    std::optional<XprStats> xpr;
};

SpreadSet compute_spreads(std::span<const RayRecord> rays);

struct SpreadReport {
    SpreadSet global;
    std::vector<SpreadSet> per_cluster; // retained rays of each cluster
};

SpreadReport spread_report(std::span<const RayRecord> rays, const ClusterSet* clusters = nullptr);

} // namespace chanlab

#endif
