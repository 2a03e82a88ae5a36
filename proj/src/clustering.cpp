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

#include "chanlab/clustering.hpp"

#include "chanlab/chanstats.hpp"
#include "chanlab/core.hpp"
#include "chanlab/error.hpp"
#include "chanlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>

namespace chanlab {

namespace {

constexpr double deg = pi / 180.0;

double squared(const McdPoint& a, const McdPoint& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

double az_of(double x, double y)
{
    if (x == 0.0 && y == 0.0)
        return 0.0;
    return wrap_azimuth(std::atan2(y, x) / deg);
}

double el_of(double x, double y, double z)
{
    const double h = std::sqrt(x * x + y * y);
    if (h == 0.0 && z == 0.0)
        return 0.0;
    return std::atan2(z, h) / deg;
}

// Indices of rays in canonical (value) order.
std::vector<std::size_t> canonical_order(std::span<const RayRecord> rays)
{
    std::vector<std::size_t> idx(rays.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto key = [&](std::size_t i) {
        const auto& r = rays[i];
        return std::tie(r.delay_ns, r.aod_az_deg, r.aod_el_deg, r.aoa_az_deg, r.aoa_el_deg, r.power, r.link_id);
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    return idx;
}

// Recompute centroids and power bookkeeping from assignment and pruned marks.
// Points/powers are in canonical order; assignment/pruned index the same way.
void rebuild_clusters(std::vector<ClusterInfo>& clusters, std::span<const McdPoint> pts,
                      std::span<const RayRecord> rays, std::span<const std::size_t> assignment,
                      const std::vector<bool>& pruned)
{
    const std::size_t k = clusters.size();
    std::vector<McdPoint> sum(k, McdPoint{});
    std::vector<std::array<double, 6>> dir(k, std::array<double, 6>{});
    std::vector<double> delay(k, 0.0);
    for (auto& c : clusters) {
        c.ray_count = 0;
        c.pruned_count = 0;
        c.power = 0.0;
        c.total_power = 0.0;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto& c = clusters[assignment[i]];
        const double p = rays[i].power;
        c.total_power += p;
        if (pruned[i]) {
            ++c.pruned_count;
            continue;
        }
        ++c.ray_count;
        c.power += p;
        for (std::size_t d = 0; d < 7; ++d)
            sum[assignment[i]][d] += p * pts[i][d];
        delay[assignment[i]] += p * rays[i].delay_ns;
    }
    for (std::size_t j = 0; j < k; ++j) {
        auto& c = clusters[j];
        if (c.power <= 0.0)
            continue;
        for (std::size_t d = 0; d < 7; ++d)
            c.centroid[d] = sum[j][d] / c.power;
        c.delay_ns = delay[j] / c.power;
        c.aod_az_deg = az_of(c.centroid[0], c.centroid[1]);
        c.aod_el_deg = el_of(c.centroid[0], c.centroid[1], c.centroid[2]);
        c.aoa_az_deg = az_of(c.centroid[3], c.centroid[4]);
        c.aoa_el_deg = el_of(c.centroid[3], c.centroid[4], c.centroid[5]);
    }
}

double objective_of(std::span<const McdPoint> pts, std::span<const RayRecord> rays,
                    std::span<const std::size_t> assignment, const std::vector<bool>& pruned,
                    const std::vector<ClusterInfo>& clusters)
{
    double j = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!pruned[i])
            j += rays[i].power * squared(pts[i], clusters[assignment[i]].centroid);
    return j;
}

template <typename T>
std::vector<T> permute(std::span<const T> v, std::span<const std::size_t> order)
{
    std::vector<T> out;
    out.reserve(order.size());
    for (auto i : order)
        out.push_back(v[i]);
    return out;
}

} // namespace

McdPoint mcd_embed(const RayRecord& r, double zeta, double delay_norm_ns)
{
    auto unit = [](double az, double el, double* out) {
        out[0] = 0.5 * std::cos(el * deg) * std::cos(az * deg);
        out[1] = 0.5 * std::cos(el * deg) * std::sin(az * deg);
        out[2] = 0.5 * std::sin(el * deg);
    };
    McdPoint p{};
    unit(r.aod_az_deg, r.aod_el_deg, &p[0]);
    unit(r.aoa_az_deg, r.aoa_el_deg, &p[3]);
    p[6] = delay_norm_ns > 0.0 ? zeta * r.delay_ns / delay_norm_ns : 0.0;
    return p;
}

double mcd_distance(const McdPoint& a, const McdPoint& b)
{
    return std::sqrt(squared(a, b));
}

double mcd_distance(const RayRecord& a, const RayRecord& b, double zeta, double delay_norm_ns)
{
    return mcd_distance(mcd_embed(a, zeta, delay_norm_ns), mcd_embed(b, zeta, delay_norm_ns));
}

void ClusteringConfig::validate() const
{
    if (k_min < 1 || k_max < k_min)
        throw ValidationError("cluster count range must satisfy 1 <= k_min <= k_max");
    if (!(prune_s > 0.0 && prune_s <= prune_p && prune_p <= 1.0))
        throw ValidationError("shape pruning fractions must satisfy 0 < s <= p <= 1");
    if (restarts < 1)
        throw ValidationError("restarts must be at least 1");
    if (!(zeta >= 0.0) || !std::isfinite(zeta))
        throw ValidationError("MCD delay weight zeta must be non-negative");
    if (max_iterations < 1)
        throw ValidationError("max_iterations must be at least 1");
}

ClusterSet kpower_means(std::span<const RayRecord> rays, std::size_t k, std::uint64_t seed, double zeta,
                        int max_iterations)
{
    const std::size_t n = rays.size();
    if (k == 0)
        throw ValidationError("cluster count must be at least 1");
    if (k > n)
        throw ValidationError("cluster count " + std::to_string(k) + " exceeds the number of rays (" +
                              std::to_string(n) + ")");

    const auto order = canonical_order(rays);
    const auto sorted = permute(rays, std::span<const std::size_t>(order));

    ClusterSet out;
    out.zeta = zeta;
    out.delay_norm_ns = rms_delay_spread(sorted);
    std::vector<McdPoint> pts;
    pts.reserve(n);
    for (const auto& r : sorted)
        pts.push_back(mcd_embed(r, zeta, out.delay_norm_ns));

    // Power-weighted k-means++ seeding.
    Rng rng(seed);
    std::vector<std::size_t> seeds;
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    std::vector<bool> chosen(n, false);
    auto pick = [&](const std::vector<double>& weight) {
        const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
        if (total > 0.0) {
            const double u = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += weight[i];
                if (u < acc && weight[i] > 0.0)
                    return i;
            }
            for (std::size_t i = n; i-- > 0;)
                if (weight[i] > 0.0)
                    return i;
        }
        // All remaining rays coincide with a seed: take an unused one uniformly.
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < n; ++i)
            if (!chosen[i])
                free.push_back(i);
        return free[rng.below(free.size())];
    };
    std::vector<double> weight(n);
    for (std::size_t i = 0; i < n; ++i)
        weight[i] = sorted[i].power;
    while (seeds.size() < k) {
        const std::size_t s = pick(weight);
        seeds.push_back(s);
        chosen[s] = true;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared(pts[i], pts[s]));
            weight[i] = chosen[i] ? 0.0 : sorted[i].power * d2[i];
        }
    }

    std::vector<ClusterInfo> clusters(k);
    for (std::size_t j = 0; j < k; ++j)
        clusters[j].centroid = pts[seeds[j]];

    const std::vector<bool> none(n, false);
    std::vector<std::size_t> assign(n, k);
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = assign[i] < k ? assign[i] : 0;
            double best_d = squared(pts[i], clusters[best].centroid);
            for (std::size_t j = 0; j < k; ++j) {
                const double d = squared(pts[i], clusters[j].centroid);
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            if (best != assign[i]) {
                assign[i] = best;
                changed = true;
            }
        }
        // Refill empty clusters with the ray that contributes most to the
        // objective among clusters that can spare one.
        for (;;) {
            std::vector<std::size_t> count(k, 0);
            for (auto a : assign)
                ++count[a];
            const auto empty = std::find(count.begin(), count.end(), std::size_t{0});
            if (empty == count.end())
                break;
            std::size_t donor = n;
            double worst = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[assign[i]] < 2)
                    continue;
                const double c = sorted[i].power * squared(pts[i], clusters[assign[i]].centroid);
                if (c > worst) {
                    worst = c;
                    donor = i;
                }
            }
            const auto e = static_cast<std::size_t>(empty - count.begin());
            assign[donor] = e;
            clusters[e].centroid = pts[donor];
            changed = true;
        }
        out.objective_history.push_back(objective_of(pts, sorted, assign, none, clusters));
        if (!changed && iter > 0)
            break;
        rebuild_clusters(clusters, pts, sorted, assign, none);
    }
    out.iterations = iter;
    rebuild_clusters(clusters, pts, sorted, assign, none);
    out.objective = objective_of(pts, sorted, assign, none, clusters);

    out.clusters = std::move(clusters);
    out.assignment.assign(n, 0);
    out.pruned.assign(n, false);
    for (std::size_t c = 0; c < n; ++c)
        out.assignment[order[c]] = assign[c];
    return out;
}

ClusterSet shape_prune(const ClusterSet& cs, std::span<const RayRecord> rays, double p, double s)
{
    if (!(s > 0.0 && s <= p && p <= 1.0))
        throw ValidationError("shape pruning fractions must satisfy 0 < s <= p <= 1");
    if (cs.assignment.size() != rays.size())
        throw ValidationError("cluster assignment does not match the ray set");

    // Work in canonical order so ties and sums do not depend on input order.
    const std::size_t n = rays.size();
    const auto order = canonical_order(rays);
    const auto sorted = permute(rays, std::span<const std::size_t>(order));
    std::vector<std::size_t> assign(n);
    std::vector<bool> pruned(n);
    std::vector<McdPoint> pts;
    pts.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        assign[c] = cs.assignment[order[c]];
        pruned[c] = cs.pruned[order[c]];
        pts.push_back(mcd_embed(sorted[c], cs.zeta, cs.delay_norm_ns));
    }

    for (std::size_t j = 0; j < cs.cluster_count(); ++j) {
        std::vector<std::size_t> members;
        double power = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (assign[i] == j && !pruned[i]) {
                members.push_back(i);
                power += sorted[i].power;
            }
        const std::size_t count = members.size();
        if (count <= 1)
            continue;
        const auto& centre = cs.clusters[j].centroid;
        std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return squared(pts[a], centre) > squared(pts[b], centre);
        });
        const auto min_keep = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(p * static_cast<double>(count) - 1e-9)));
        const double min_power = s * power * (1.0 - 1e-12);
        std::size_t kept = count;
        double kept_power = power;
        for (const auto i : members) {
            if (kept - 1 < min_keep || kept_power - sorted[i].power < min_power)
                break;
            pruned[i] = true;
            --kept;
            kept_power -= sorted[i].power;
        }
    }

    ClusterSet out = cs;
    rebuild_clusters(out.clusters, pts, sorted, assign, pruned);
    out.objective = objective_of(pts, sorted, assign, pruned, out.clusters);
    for (std::size_t c = 0; c < n; ++c)
        out.pruned[order[c]] = pruned[c];
    return out;
}

double calinski_harabasz(const ClusterSet& cs, std::span<const RayRecord> rays)
{
    const std::size_t n = rays.size();
    const std::size_t k = cs.cluster_count();
    if (k < 2 || k >= n)
        return std::numeric_limits<double>::quiet_NaN();
    McdPoint mean{};
    double ptot = 0.0;
    std::vector<McdPoint> pts;
    pts.reserve(n);
    for (const auto& r : rays) {
        pts.push_back(mcd_embed(r, cs.zeta, cs.delay_norm_ns));
        for (std::size_t d = 0; d < 7; ++d)
            mean[d] += r.power * pts.back()[d];
        ptot += r.power;
    }
    for (auto& m : mean)
        m /= ptot;
    double within = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        within += rays[i].power * squared(pts[i], cs.clusters[cs.assignment[i]].centroid);
    double between = 0.0;
    for (const auto& c : cs.clusters)
        between += c.total_power * squared(c.centroid, mean);
    if (within <= 0.0)
        return between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
}

MultiRestartResult cluster_multirestart(std::span<const RayRecord> rays, const ClusteringConfig& cfg)
{
    cfg.validate();
    if (rays.empty())
        throw ValidationError("clustering needs at least one ray");
    const std::size_t n = rays.size();
    const std::size_t k_lo = std::min<std::size_t>(static_cast<std::size_t>(cfg.k_min), n);
    const std::size_t k_hi = std::min<std::size_t>(static_cast<std::size_t>(cfg.k_max), n);

    MultiRestartResult result;
    bool have_best = false;
    for (int r = 1; r <= cfg.restarts; ++r) {
        RestartSummary sum;
        sum.restart = r;
        sum.seed = cfg.seed + static_cast<std::uint64_t>(r);

        std::optional<ClusterSet> pick;
        double pick_ch = -1.0;
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
            auto cs = kpower_means(rays, k, derive_seed(sum.seed, {k}), cfg.zeta, cfg.max_iterations);
            const double ch = calinski_harabasz(cs, rays);
            sum.k_values.push_back(k);
            sum.ch_values.push_back(ch);
            sum.histories.push_back(cs.objective_history);
            // Only k with a defined ratio compete; the first k is the fallback.
            const bool better = !std::isnan(ch) && ch > pick_ch;
            if (!pick || better) {
                if (!std::isnan(ch))
                    pick_ch = ch;
                pick = std::move(cs);
            }
        }
        auto pruned = shape_prune(*pick, rays, cfg.prune_p, cfg.prune_s);
        sum.chosen_k = pruned.cluster_count();
        sum.cluster_count = pruned.cluster_count();
        sum.objective = pruned.objective;

        const bool better = !have_best || sum.cluster_count < result.best.cluster_count() ||
                            (sum.cluster_count == result.best.cluster_count() &&
                             sum.objective < result.best.objective);
        if (better) {
            result.best = std::move(pruned);
            result.best_restart = r;
            have_best = true;
        }
        result.restarts.push_back(std::move(sum));
    }
    return result;
}

} // namespace chanlab
