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

#ifndef CHANLAB_DROPSIM_HPP
#define CHANLAB_DROPSIM_HPP

#include "chanlab/core.hpp"
#include "chanlab/fitting.hpp"
#include "chanlab/geometry.hpp"
#include "chanlab/los.hpp"
#include "chanlab/penetration.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace chanlab {

enum class Placement { UniformDisc, Explicit };
enum class LosMode { Map, Stochastic };
enum class SfMode { Iid, ExpCorrelated };

/// Monte-Carlo drop configuration.
///
/// Defaults that are modelling choices rather than measured values: indoor
/// depth uniform on [0, 25] m, normal incidence (max_incidence_deg = 0) for
/// stochastic drops, and uncorrelated shadow fading.
struct DropConfig {
    ScenarioId los_scenario = ScenarioId::UMaLOS;
    ScenarioId nlos_scenario = ScenarioId::UMaNLOS;
    Frequency frequency{28.0};
    PlModelKind pl_model = PlModelKind::CI; // ABG applies to NLOS links; LOS links stay CI

    Placement placement = Placement::UniformDisc;
    std::size_t ue_count = 1000;
    Point2 disc_center{0.0, 0.0};
    double disc_radius_m = 200.0;
    double min_distance_m = 10.0;
    std::vector<Point2> ue_positions; // Placement::Explicit
    std::vector<Point2> ap_positions{Point2{0.0, 0.0}};

    LosMode los_mode = LosMode::Stochastic;
    std::optional<LosModel> los_model; // default follows the environment
    double ue_height_m = 1.5;

    double indoor_fraction = 0.0;
    double high_loss_fraction = 0.0;
    O2iConfig o2i;
    double max_indoor_depth_m = 25.0;
    double max_incidence_deg = 0.0;

    SfMode sf_mode = SfMode::Iid;
    double decorrelation_m = 0.0;
    std::optional<double> sf_sigma_db; // overrides the per-scenario sigma

    double los_bin_width_m = 10.0;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    // Throws ValidationError; run before any sampling.
    void validate(bool have_map) const;
    LosModel effective_los_model() const;
};

struct DropLink {
    std::size_t ue = 0;
    std::size_t ap = 0;
    Point2 ue_pos;
    double d2d_m = 0.0;
    bool indoor = false;
    BplClass bpl_class = BplClass::LowLoss;
    double depth_m = 0.0;
    double incidence_deg = 0.0;
    double los_distance_m = 0.0; // distance fed to the LOS model (outer wall for indoor UEs)
    double p_los = 0.0;          // NaN in map mode
    bool los = false;
    double pl_db = 0.0;
    double sf_db = 0.0;
    double o2i_db = 0.0;
    double coupling_loss_db = 0.0;
};

struct LosFractionBin {
    double d_lo = 0.0;
    double d_hi = 0.0;
    std::size_t count = 0;
    std::size_t los_count = 0;
    double fraction = 0.0;
    double expected = 0.0; // mean model probability of the links in the bin (stochastic mode)
};

struct DropResult {
    DropConfig config;
    std::vector<DropLink> links;
    std::vector<LosFractionBin> los_bins;
    std::vector<double> coupling_loss_sorted;
    double los_fraction = 0.0;
    std::size_t indoor_links = 0;
};

/// Zero-mean, unit-variance Gaussian field with covariance exp(-r / L),
/// realised as a sum of random-phase cosines whose wave vectors follow the
/// matching bivariate Cauchy spectrum.
class CorrelatedField {
public:
    CorrelatedField(std::uint64_t seed, double decorrelation_m, std::size_t components = 512);
    double operator()(Point2 p) const;

private:
    std::vector<std::array<double, 3>> waves_; // kx, ky, phase
    double scale_;
};

DropResult run_drop(const DropConfig& cfg, const BuildingMap* map = nullptr);

struct PercentileRow {
    double percentile = 0.0;
    double value_db = 0.0;
};

/// Nearest-rank percentiles of the coupling loss.
std::vector<PercentileRow> coupling_loss_cdf(const DropResult& result, std::span<const double> percentiles);

} // namespace chanlab

#endif
