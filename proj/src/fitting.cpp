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

#include "chanlab/fitting.hpp"

#include "chanlab/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace chanlab {

std::string_view model_kind_name(PlModelKind k)
{
    switch (k) {
    case PlModelKind::CI:
        return "ci";
    case PlModelKind::CIF:
        return "cif";
    case PlModelKind::ABG:
        return "abg";
    }
    return "?";
}

PlModelKind parse_model_kind(std::string_view name)
{
    if (name == "ci")
        return PlModelKind::CI;
    if (name == "cif")
        return PlModelKind::CIF;
    if (name == "abg")
        return PlModelKind::ABG;
    throw ValidationError("unknown path loss model '" + std::string(name) + "' (expected ci, cif or abg)");
}

double evaluate(const PlModel& m, Frequency f, double d_m)
{
    struct Eval {
        Frequency f;
        double d;
        double operator()(const CiModel& x) const { return ci_pl(x, f, d); }
        double operator()(const CifModel& x) const { return cif_pl(x, f, d); }
        double operator()(const AbgModel& x) const { return abg_pl(x, f, d); }
    };
    return std::visit(Eval{f, d_m}, m);
}

PlModelKind kind_of(const PlModel& m)
{
    return static_cast<PlModelKind>(m.index());
}

std::vector<double> residuals(const PlModel& m, std::span<const PathLossSample> samples)
{
    std::vector<double> r;
    r.reserve(samples.size());
    for (const auto& s : samples)
        r.push_back(s.pl_db - evaluate(m, s.f, s.d_m));
    return r;
}

namespace {

void validate_samples(std::span<const PathLossSample> samples, std::size_t min_count, bool anchored)
{
    if (samples.size() < min_count)
        throw ValidationError("fit needs at least " + std::to_string(min_count) + " samples, got " +
                              std::to_string(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const auto where = " (sample " + std::to_string(i) + ")";
        if (!(s.f.ghz() > 0.0) || !std::isfinite(s.f.ghz()))
            throw ValidationError("frequency must be positive" + where);
        if (!std::isfinite(s.pl_db))
            throw ValidationError("path loss must be finite" + where);
        if (!(s.weight > 0.0) || !std::isfinite(s.weight))
            throw ValidationError("weight must be positive" + where);
        if (anchored ? !(s.d_m >= 1.0) : !(s.d_m >= abg_min_distance_m))
            throw ValidationError("distance " + std::to_string(s.d_m) + " m is out of range" + where);
    }
}

void fill_statistics(FitReport& rep, std::span<const PathLossSample> samples)
{
    const auto r = residuals(rep.model, samples);
    double w_sum = 0.0, r_sum = 0.0, r2_sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double w = samples[i].weight;
        w_sum += w;
        r_sum += w * r[i];
        r2_sum += w * r[i] * r[i];
    }
    rep.sample_count = samples.size();
    rep.total_weight = w_sum;
    rep.residual_mean = r_sum / w_sum;
    rep.mse = r2_sum / w_sum;
    rep.sf_sigma = std::sqrt(rep.mse);
    double c2 = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double e = r[i] - rep.residual_mean;
        c2 += samples[i].weight * e * e;
    }
    rep.residual_std = std::sqrt(c2 / w_sum);
}

void add_band_warnings(FitReport& rep, std::span<const PathLossSample> samples)
{
    std::size_t outside = 0;
    for (const auto& s : samples)
        if (band_warning(s.f))
            ++outside;
    if (outside > 0)
        rep.warnings.push_back(std::to_string(outside) + " sample(s) lie outside the 0.5-100 GHz model band");
}

// Weighted frequency counts keyed by exact frequency value.
std::vector<std::pair<Frequency, double>> frequency_counts(std::span<const PathLossSample> samples)
{
    std::map<double, double> counts;
    for (const auto& s : samples)
        counts[s.f.ghz()] += s.weight;
    std::vector<std::pair<Frequency, double>> out;
    out.reserve(counts.size());
    for (const auto& [f, n] : counts)
        out.emplace_back(Frequency(f), n);
    return out;
}

} // namespace

FitReport fit_ci(std::span<const PathLossSample> samples)
{
    validate_samples(samples, 2, true);
    // Minimise sum w (a - n b)^2 with a = pl - FSPL(f, 1 m), b = 10 log10 d.
    double ab = 0.0, bb = 0.0;
    for (const auto& s : samples) {
        const double a = s.pl_db - fspl_1m(s.f);
        const double b = 10.0 * std::log10(s.d_m);
        ab += s.weight * a * b;
        bb += s.weight * b * b;
    }
    if (bb == 0.0)
        throw SingularFitError("CI fit is singular: every sample sits at the 1 m reference distance");
    FitReport rep;
    rep.model = CiModel{ab / bb};
    fill_statistics(rep, samples);
    add_band_warnings(rep, samples);
    return rep;
}

FitReport fit_cif(std::span<const PathLossSample> samples)
{
    validate_samples(samples, 2, true);
    const auto counts = frequency_counts(samples);
    const Frequency f0 = centroid_frequency(counts);

    if (counts.size() == 1) {
        FitReport rep = fit_ci(samples);
        rep.model = CifModel{std::get<CiModel>(rep.model).n, 0.0, f0};
        rep.warnings.push_back("single frequency in data: CIF reduces to CI (b = 0)");
        return rep;
    }

    // y = n x1 + (n b) x2 with x1 = 10 log10 d, x2 = x1 (f - f0) / f0.
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, sy1 = 0.0, sy2 = 0.0;
    for (const auto& s : samples) {
        const double y = s.pl_db - fspl_1m(s.f);
        const double x1 = 10.0 * std::log10(s.d_m);
        const double x2 = x1 * (s.f.ghz() - f0.ghz()) / f0.ghz();
        s11 += s.weight * x1 * x1;
        s12 += s.weight * x1 * x2;
        s22 += s.weight * x2 * x2;
        sy1 += s.weight * y * x1;
        sy2 += s.weight * y * x2;
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(std::abs(det) > 1e-12 * s11 * s22))
        throw SingularFitError("CIF fit is singular: distance and frequency-slope regressors are not independent");
    const double n = (sy1 * s22 - sy2 * s12) / det;
    const double nb = (s11 * sy2 - s12 * sy1) / det;
    if (n == 0.0)
        throw SingularFitError("CIF fit is singular: fitted path loss exponent is zero, b is undefined");

    FitReport rep;
    rep.model = CifModel{n, nb / n, f0};
    fill_statistics(rep, samples);
    add_band_warnings(rep, samples);
    return rep;
}

FitReport fit_abg(std::span<const PathLossSample> samples)
{
    validate_samples(samples, 3, false);

    auto distinct = [&](auto key) {
        std::vector<double> v;
        for (const auto& s : samples)
            v.push_back(key(s));
        std::sort(v.begin(), v.end());
        return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
    };
    if (distinct([](const PathLossSample& s) { return s.d_m; }) < 2)
        throw SingularFitError("ABG fit is singular: all samples share one distance, alpha is unidentifiable");
    if (distinct([](const PathLossSample& s) { return s.f.ghz(); }) < 2)
        throw SingularFitError("ABG fit is singular: all samples share one frequency, gamma is unidentifiable");

    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        const double sw = std::sqrt(s.weight);
        x(i, 0) = sw * 10.0 * std::log10(s.d_m);
        x(i, 1) = sw;
        x(i, 2) = sw * 10.0 * std::log10(s.f.ghz());
        y(i) = sw * s.pl_db;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-12);
    if (qr.rank() < 3)
        throw SingularFitError(
            "ABG fit is singular: log-distance and log-frequency are collinear across the samples");
    const Eigen::Vector3d theta = qr.solve(y);

    FitReport rep;
    rep.model = AbgModel{theta(0), theta(1), theta(2)};
    fill_statistics(rep, samples);
    add_band_warnings(rep, samples);
    return rep;
}

FitReport fit(PlModelKind kind, std::span<const PathLossSample> samples)
{
    switch (kind) {
    case PlModelKind::CI:
        return fit_ci(samples);
    case PlModelKind::CIF:
        return fit_cif(samples);
    case PlModelKind::ABG:
        return fit_abg(samples);
    }
    throw ValidationError("unknown model kind");
}

// ---- LOS probability ------------------------------------------------------

std::string_view los_fit_model_name(LosFitModel m)
{
    return m == LosFitModel::D1D2 ? "d1d2" : "nyu_squared";
}

std::vector<LosBin> bin_los_samples(std::span<const LosSample> samples, double bin_width_m)
{
    if (!(bin_width_m > 0.0) || !std::isfinite(bin_width_m))
        throw ValidationError("LOS bin width must be positive");

    // Sorted copy so bin sums do not depend on input order.
    std::vector<LosSample> sorted(samples.begin(), samples.end());
    for (const auto& s : sorted)
        if (!(s.d_m > 0.0) || !std::isfinite(s.d_m))
            throw ValidationError("LOS sample distance must be positive");
    std::sort(sorted.begin(), sorted.end(), [](const LosSample& a, const LosSample& b) {
        return a.d_m != b.d_m ? a.d_m < b.d_m : a.los < b.los;
    });

    std::vector<LosBin> bins;
    long current = -1;
    double d_sum = 0.0;
    auto close = [&] {
        if (!bins.empty()) {
            auto& b = bins.back();
            b.d_mean = d_sum / static_cast<double>(b.count);
            b.p_hat = static_cast<double>(b.los_count) / static_cast<double>(b.count);
        }
    };
    for (const auto& s : sorted) {
        const long idx = static_cast<long>(std::floor(s.d_m / bin_width_m));
        if (idx != current) {
            close();
            current = idx;
            d_sum = 0.0;
            LosBin b;
            b.d_lo = static_cast<double>(idx) * bin_width_m;
            b.d_hi = static_cast<double>(idx + 1) * bin_width_m;
            bins.push_back(b);
        }
        auto& b = bins.back();
        ++b.count;
        b.los_count += s.los ? 1 : 0;
        d_sum += s.d_m;
    }
    close();
    return bins;
}

double los_mse(std::span<const LosBin> bins, const LosModel& model)
{
    if (bins.empty())
        throw ValidationError("LOS MSE needs at least one bin");
    double acc = 0.0;
    for (const auto& b : bins) {
        const double e = p_los(model, b.d_mean) - b.p_hat;
        acc += e * e;
    }
    return acc / static_cast<double>(bins.size());
}

namespace {

// Grid search with d1 restricted to [d1_lo, d1_hi].
std::pair<D1D2Params, double> grid_search(std::span<const LosBin> bins, LosFitModel model, const LosGrid& grid,
                                          int d1_lo, int d1_hi)
{
    const std::size_t nb = bins.size();
    const int n2 = grid.d2_max - grid.d2_min + 1;
    // exp(-d/d2) per (d2, bin), shared by every d1 row.
    std::vector<double> e(static_cast<std::size_t>(n2) * nb);
    for (int j = 0; j < n2; ++j)
        for (std::size_t b = 0; b < nb; ++b)
            e[static_cast<std::size_t>(j) * nb + b] = std::exp(-bins[b].d_mean / (grid.d2_min + j));

    D1D2Params best{static_cast<double>(d1_lo), static_cast<double>(grid.d2_min)};
    double best_mse = std::numeric_limits<double>::infinity();
    for (int d1 = d1_lo; d1 <= d1_hi; ++d1) {
        for (int j = 0; j < n2; ++j) {
            double acc = 0.0;
            for (std::size_t b = 0; b < nb; ++b) {
                const double d = bins[b].d_mean;
                double p = 1.0;
                if (d > d1) {
                    const double ex = e[static_cast<std::size_t>(j) * nb + b];
                    p = (d1 / d) * (1.0 - ex) + ex;
                }
                if (model == LosFitModel::NyuSquared)
                    p *= p;
                const double err = p - bins[b].p_hat;
                acc += err * err;
            }
            const double mse = acc / static_cast<double>(nb);
            if (mse < best_mse) {
                best_mse = mse;
                best = {static_cast<double>(d1), static_cast<double>(grid.d2_min + j)};
            }
        }
    }
    return {best, best_mse};
}

} // namespace

LosFitResult fit_los_probability(std::span<const LosSample> samples, LosFitModel model, double bin_width_m,
                                 const LosGrid& grid)
{
    if (grid.d1_min < 1 || grid.d2_min < 1 || grid.d1_max < grid.d1_min || grid.d2_max < grid.d2_min)
        throw ValidationError("invalid LOS search grid");
    LosFitResult out;
    out.model = model;
    out.bin_width_m = bin_width_m;
    out.bins = bin_los_samples(samples, bin_width_m);
    if (out.bins.size() < 2)
        throw ValidationError("LOS fit needs at least 2 non-empty distance bins, got " +
                              std::to_string(out.bins.size()));

    const bool all_los = std::all_of(out.bins.begin(), out.bins.end(), [](const LosBin& b) { return b.p_hat == 1.0; });
    const bool no_los = std::all_of(out.bins.begin(), out.bins.end(), [](const LosBin& b) { return b.p_hat == 0.0; });

    if (all_los) {
        // Every d1 beyond the data fits perfectly; report the grid edge.
        const auto [p, mse] = grid_search(out.bins, model, grid, grid.d1_max, grid.d1_max);
        out.params = p;
        out.mse = mse;
        out.degenerate = true;
        out.note = "all samples are LOS: d1 pinned to the grid maximum";
        return out;
    }
    const auto [p, mse] = grid_search(out.bins, model, grid, grid.d1_min, grid.d1_max);
    out.params = p;
    out.mse = mse;
    if (no_los) {
        out.degenerate = true;
        out.note = "no LOS samples: fit is driven by the model floor";
    }
    return out;
}

LosComparison compare_los_models(std::span<const LosSample> samples, double bin_width_m, D1D2Params reference,
                                 const LosGrid& grid)
{
    const auto d1d2 = fit_los_probability(samples, LosFitModel::D1D2, bin_width_m, grid);
    const auto nyu = fit_los_probability(samples, LosFitModel::NyuSquared, bin_width_m, grid);

    LosComparison out;
    out.bin_width_m = bin_width_m;
    out.bin_count = d1d2.bins.size();
    out.rows.push_back({"3GPP", reference, los_mse(d1d2.bins, LosD1D2{reference})});
    out.rows.push_back({"d1/d2", d1d2.params, d1d2.mse});
    out.rows.push_back({"NYU-squared", nyu.params, nyu.mse});
    return out;
}

} // namespace chanlab
