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

#ifndef CHANLAB_CLUSTERING_HPP
#define CHANLAB_CLUSTERING_HPP

#include "chanlab/rays.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chanlab {

// Rays are compared in a 7-dimensional embedding: half the departure unit
// vector, half the arrival unit vector and the scaled delay. The Euclidean
// distance there is the multipath component distance (MCD).
using McdPoint = std::array<double, 7>;

McdPoint mcd_embed(const RayRecord& r, double zeta, double delay_norm_ns);
double mcd_distance(const McdPoint& a, const McdPoint& b);

/// sqrt(|dOmega_tx|^2 / 4 + |dOmega_rx|^2 / 4 + (zeta |dtau| / delay_norm)^2).
/// A non-positive delay_norm drops the delay term.
double mcd_distance(const RayRecord& a, const RayRecord& b, double zeta, double delay_norm_ns);

struct ClusteringConfig {
    int k_min = 2;
    int k_max = 8;
    double prune_p = 0.98; // retained fraction of the ray count
    double prune_s = 0.95; // retained fraction of the power
    int restarts = 50;
    double zeta = 1.0;
    std::uint64_t seed = 0;
    int max_iterations = 100;

    void validate() const;
};

struct ClusterInfo {
    McdPoint centroid{};        // power-weighted mean in MCD space (retained rays)
    double delay_ns = 0.0;      // power-weighted mean delay
    double aod_az_deg = 0.0;    // direction of the mean departure vector
    double aod_el_deg = 0.0;
    double aoa_az_deg = 0.0;
    double aoa_el_deg = 0.0;
    std::size_t ray_count = 0;  // retained rays
    std::size_t pruned_count = 0;
    double power = 0.0;         // retained rays
    double total_power = 0.0;   // including pruned rays
};

/// Clustering of one ray set; vectors are indexed in input order.
struct ClusterSet {
    std::vector<std::size_t> assignment;
    std::vector<bool> pruned;
    std::vector<ClusterInfo> clusters;
    double zeta = 1.0;
    double delay_norm_ns = 0.0;
    // Power-weighted squared-MCD sum over retained rays.
    double objective = 0.0;
    // Objective after each assignment step of the K-power-means iteration.
    std::vector<double> objective_history;
    int iterations = 0;

    std::size_t cluster_count() const { return clusters.size(); }
};

/// Power-weighted K-means in MCD space. Seeds by power-weighted k-means++
/// sampling over a canonically sorted copy of the rays, so the result does not
/// depend on input order. Stops when assignments settle or after
/// max_iterations. delay_norm defaults to the RMS delay spread of the rays.
ClusterSet kpower_means(std::span<const RayRecord> rays, std::size_t k, std::uint64_t seed, double zeta = 1.0,
                        int max_iterations = 100);

/// Drops the rays farthest from each centroid while the cluster keeps at
/// least fraction p of its rays and fraction s of its power (never below one
/// ray). Pruned rays stay in their cluster with the pruned mark set.
ClusterSet shape_prune(const ClusterSet& cs, std::span<const RayRecord> rays, double p, double s);

/// Calinski-Harabasz ratio (B / (k-1)) / (W / (n-k)) with power-weighted
/// scatter; +inf for zero within-cluster scatter.
double calinski_harabasz(const ClusterSet& cs, std::span<const RayRecord> rays);

struct RestartSummary {
    int restart = 0;
    std::uint64_t seed = 0;
    std::size_t chosen_k = 0;
    std::size_t cluster_count = 0;
    double objective = 0.0;
    std::vector<std::size_t> k_values;
    std::vector<double> ch_values;
    std::vector<std::vector<double>> histories; // one per k value
};

struct MultiRestartResult {
    ClusterSet best;
    int best_restart = 0;
    std::vector<RestartSummary> restarts;
};

/// Runs cfg.restarts independent sweeps over k in [k_min, k_max], picks k per
/// restart by the Calinski-Harabasz ratio, prunes, and keeps the restart with
/// the fewest clusters (then the lower objective, then the earlier restart).
/// Restart r uses seed cfg.seed + r.
MultiRestartResult cluster_multirestart(std::span<const RayRecord> rays, const ClusteringConfig& cfg);

} // namespace chanlab

#endif
