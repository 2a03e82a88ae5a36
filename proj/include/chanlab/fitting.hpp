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

#ifndef CHANLAB_FITTING_HPP
#define CHANLAB_FITTING_HPP

#include "chanlab/core.hpp"
#include "chanlab/los.hpp"
#include "chanlab/pathloss.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chanlab {

/// One measured or ray-traced path loss observation. `weight` is a
/// measurement count: a sample with weight 2 fits exactly like two copies.
struct PathLossSample {
    Frequency f;
    double d_m = 1.0;
    double pl_db = 0.0;
    bool los = false;
    double weight = 1.0;
};

struct LosSample {
    double d_m = 1.0;
    bool los = false;
};

enum class PlModelKind { CI, CIF, ABG };

std::string_view model_kind_name(PlModelKind k);
PlModelKind parse_model_kind(std::string_view name);

using PlModel = std::variant<CiModel, CifModel, AbgModel>;

double evaluate(const PlModel& m, Frequency f, double d_m);
PlModelKind kind_of(const PlModel& m);

/// Result of a path loss fit.
///
/// sf_sigma is the weighted RMS of the residuals pl - model, i.e. the
/// population standard deviation of the zero-mean shadow fading term the
/// models assume. For ABG the residual mean is zero and it coincides with the
/// mean-removed deviation (residual_std); for CI and CIF the two can differ.
struct FitReport {
    PlModel model;
    double sf_sigma = 0.0;      // dB
    double residual_mean = 0.0; // dB
    double residual_std = 0.0;  // dB, mean removed
    double mse = 0.0;           // dB^2
    std::size_t sample_count = 0;
    double total_weight = 0.0;
    std::vector<std::string> warnings;

    PlModelKind kind() const { return kind_of(model); }
};

// All fitters are weighted least squares and throw ValidationError on bad
// samples, SingularFitError when a parameter is not identifiable.
FitReport fit_ci(std::span<const PathLossSample> samples);
// f0 is the weighted centroid of the sample frequencies. Single-frequency
// data falls back to fit_ci with b = 0 and a warning.
FitReport fit_cif(std::span<const PathLossSample> samples);
FitReport fit_abg(std::span<const PathLossSample> samples);

FitReport fit(PlModelKind kind, std::span<const PathLossSample> samples);

std::vector<double> residuals(const PlModel& m, std::span<const PathLossSample> samples);

// ---- LOS probability ------------------------------------------------------

enum class LosFitModel { D1D2, NyuSquared };

std::string_view los_fit_model_name(LosFitModel m);

struct LosBin {
    double d_lo = 0.0;
    double d_hi = 0.0;
    double d_mean = 0.0; // mean sample distance; models are evaluated here
    std::size_t count = 0;
    std::size_t los_count = 0;
    double p_hat = 0.0;
};

/// Non-empty bins [i w, (i+1) w), in increasing distance.
std::vector<LosBin> bin_los_samples(std::span<const LosSample> samples, double bin_width_m);

/// Integer-meter search grid for (d1, d2).
struct LosGrid {
    int d1_min = 1;
    int d1_max = 100;
    int d2_min = 1;
    int d2_max = 300;
};

/// Unweighted mean over bins of (model(d_mean) - p_hat)^2.
double los_mse(std::span<const LosBin> bins, const LosModel& model);

struct LosFitResult {
    LosFitModel model = LosFitModel::D1D2;
    D1D2Params params;
    double mse = 0.0;
    bool degenerate = false; // data held no information about d1 or d2
    std::string note;
    double bin_width_m = 0.0;
    std::vector<LosBin> bins;
};

/// Exhaustive grid search; ties go to the smaller d1, then the smaller d2.
LosFitResult fit_los_probability(std::span<const LosSample> samples, LosFitModel model,
                                 double bin_width_m = 10.0, const LosGrid& grid = {});

struct LosComparisonRow {
    std::string name;
    D1D2Params params;
    double mse = 0.0;
};

/// Rows: reference 3GPP pair (fixed), fitted d1/d2, fitted NYU squared.
struct LosComparison {
    std::vector<LosComparisonRow> rows;
    double bin_width_m = 0.0;
    std::size_t bin_count = 0;
};

LosComparison compare_los_models(std::span<const LosSample> samples, double bin_width_m = 10.0,
                                 D1D2Params reference = uma_3gpp_params, const LosGrid& grid = {});

} // namespace chanlab

#endif
