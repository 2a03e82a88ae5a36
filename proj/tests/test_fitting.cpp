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

#include <doctest.h>

#include "chanlab/error.hpp"
#include "chanlab/fitting.hpp"
#include "chanlab/rng.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace chanlab;

namespace {

std::vector<PathLossSample> synth(const PlModel& m, std::vector<double> freqs, int n, double sigma,
                                  std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<PathLossSample> out;
    for (int i = 0; i < n; ++i) {
        const Frequency f(freqs[static_cast<std::size_t>(i) % freqs.size()]);
        const double d = std::pow(10.0, rng.uniform(0.0, 2.7));
        out.push_back({f, d, evaluate(m, f, d) + sigma * rng.normal(), false, 1.0});
    }
    return out;
}

} // namespace

TEST_CASE("noise-free CI recovery")
{
    const auto s = synth(CiModel{2.89}, {28.0, 73.0}, 200, 0.0, 1);
    const auto r = fit_ci(s);
    CHECK(std::get<CiModel>(r.model).n == doctest::Approx(2.89).epsilon(1e-12));
    CHECK(r.sf_sigma < 1e-9);
    CHECK(r.sample_count == 200);
}

TEST_CASE("noise-free CIF recovery")
{
    const CifModel truth{3.1, 0.12, Frequency(50.5)};
    const auto s = synth(truth, {28.0, 73.0}, 300, 0.0, 2);
    const auto r = fit_cif(s);
    const auto m = std::get<CifModel>(r.model);
    CHECK(m.f0.ghz() == doctest::Approx(50.5));
    CHECK(m.n == doctest::Approx(3.1).epsilon(1e-9));
    CHECK(m.b == doctest::Approx(0.12).epsilon(1e-9));
}

TEST_CASE("noise-free ABG recovery")
{
    const AbgModel truth{3.48, 21.02, 2.34};
    const auto s = synth(truth, {2.9, 28.0, 73.0}, 300, 0.0, 3);
    const auto m = std::get<AbgModel>(fit_abg(s).model);
    CHECK(m.alpha == doctest::Approx(3.48).epsilon(1e-9));
    CHECK(m.beta == doctest::Approx(21.02).epsilon(1e-9));
    CHECK(m.gamma == doctest::Approx(2.34).epsilon(1e-9));
}

TEST_CASE("CIF on single-frequency data falls back to CI with a warning")
{
    const auto s = synth(CiModel{2.5}, {28.0}, 100, 1.0, 4);
    const auto r = fit_cif(s);
    const auto m = std::get<CifModel>(r.model);
    CHECK(m.b == 0.0);
    CHECK(m.n == doctest::Approx(std::get<CiModel>(fit_ci(s).model).n));
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("ABG needs variation in distance and frequency")
{
    const auto one_freq = synth(AbgModel{3.0, 20.0, 2.0}, {28.0}, 100, 1.0, 5);
    CHECK_THROWS_AS(fit_abg(one_freq), SingularFitError);
    std::vector<PathLossSample> one_dist;
    for (double f : {10.0, 28.0, 73.0})
        one_dist.push_back({Frequency(f), 50.0, 100.0 + f, false, 1.0});
    CHECK_THROWS_AS(fit_abg(one_dist), SingularFitError);
}

TEST_CASE("fit input validation")
{
    CHECK_THROWS_AS(fit_ci({}), ValidationError);
    std::vector<PathLossSample> bad{{Frequency(28.0), 0.5, 80.0, false, 1.0}};
    CHECK_THROWS_AS(fit_ci(bad), ValidationError);
    std::vector<PathLossSample> neg{{Frequency(28.0), 5.0, 80.0, false, -1.0}};
    CHECK_THROWS_AS(fit_ci(neg), ValidationError);
}

TEST_CASE("weights act like sample repetition")
{
    auto s = synth(CiModel{2.7}, {28.0, 73.0}, 50, 3.0, 6);
    auto repeated = s;
    s[0].weight = 3.0;
    repeated.push_back(repeated[0]);
    repeated.push_back(repeated[0]);
    for (auto kind : {PlModelKind::CI, PlModelKind::CIF, PlModelKind::ABG}) {
        const auto a = fit(kind, s);
        const auto b = fit(kind, repeated);
        CHECK(a.sf_sigma == doctest::Approx(b.sf_sigma).epsilon(1e-9));
        CHECK(evaluate(a.model, Frequency(40.0), 77.0) ==
              doctest::Approx(evaluate(b.model, Frequency(40.0), 77.0)).epsilon(1e-9));
    }
}

TEST_CASE("sf sigma never grows from CI to CIF")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = synth(CifModel{2.9, 0.05, Frequency(40.0)}, {10.0, 28.0, 73.0}, 120, 4.0, seed);
        CHECK(fit_cif(s).sf_sigma <= fit_ci(s).sf_sigma + 1e-12);
    }
}

TEST_CASE("ABG residuals have zero weighted mean")
{
    auto s = synth(AbgModel{3.4, 19.2, 2.3}, {6.0, 28.0, 73.0}, 400, 6.5, 7);
    Rng rng(8);
    for (auto& x : s)
        x.weight = rng.uniform(0.5, 2.0);
    const auto rep = fit_abg(s);
    const auto r = residuals(rep.model, s);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        num += s[i].weight * r[i];
        den += s[i].weight;
    }
    CHECK(std::abs(num / den) < 1e-9);
}

TEST_CASE("model kind names")
{
    CHECK(parse_model_kind("abg") == PlModelKind::ABG);
    CHECK(model_kind_name(PlModelKind::CIF) == "cif");
    CHECK_THROWS_AS(parse_model_kind("fi"), ValidationError);
}

TEST_CASE("LOS binning")
{
    const std::vector<LosSample> s{{5, true}, {15, true}, {12, false}, {3, true}, {27, false}};
    const auto bins = bin_los_samples(s, 10.0);
    REQUIRE(bins.size() == 3);
    CHECK(bins[0].count == 2);
    CHECK(bins[0].d_mean == doctest::Approx(4.0));
    CHECK(bins[1].p_hat == doctest::Approx(0.5));
    CHECK(bins[2].los_count == 0);
}

TEST_CASE("LOS fit recovers generating parameters")
{
    Rng rng(11);
    std::vector<LosSample> s;
    const D1D2Params truth{25.0, 80.0};
    for (int i = 0; i < 40000; ++i) {
        const double d = rng.uniform(1.0, 500.0);
        s.push_back({d, rng.bernoulli(p_los_d1d2(truth, d))});
    }
    const auto r = fit_los_probability(s, LosFitModel::D1D2);
    CHECK(std::abs(r.params.d1 - 25.0) <= 3.0);
    CHECK(std::abs(r.params.d2 - 80.0) <= 10.0);
    CHECK_FALSE(r.degenerate);
    CHECK(r.mse <= los_mse(r.bins, LosD1D2{truth}) + 1e-15);
}

TEST_CASE("LOS fit on all-LOS data is flagged")
{
    std::vector<LosSample> s;
    for (int i = 1; i <= 90; ++i)
        s.push_back({static_cast<double>(i), true});
    const auto r = fit_los_probability(s, LosFitModel::D1D2);
    CHECK(r.degenerate);
    CHECK(r.params.d1 == 100.0);
    CHECK(r.mse == doctest::Approx(0.0));
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("LOS model comparison lists three rows with the reference first")
{
    Rng rng(12);
    std::vector<LosSample> s;
    for (int i = 0; i < 5000; ++i) {
        const double d = rng.uniform(1.0, 300.0);
        s.push_back({d, rng.bernoulli(p_los_nyu_squared({20.0, 160.0}, d))});
    }
    const auto c = compare_los_models(s, 10.0);
    REQUIRE(c.rows.size() == 3);
    CHECK(c.rows[0].name == "3GPP");
    CHECK(c.rows[0].params.d1 == 18.0);
    CHECK(c.rows[2].mse <= c.rows[0].mse);
    CHECK(c.rows[1].mse <= c.rows[0].mse);
}

TEST_CASE("CI two-point hand example")
{
    const Frequency f(28.0);
    const std::vector<PathLossSample> s{{f, 10.0, fspl_1m(f) + 20.0, true, 1.0},
                                        {f, 100.0, fspl_1m(f) + 40.0, true, 1.0}};
    CHECK(std::get<CiModel>(fit_ci(s).model).n == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("seeded noisy CI fit")
{
    const auto s = synth(CiModel{3.0}, {28.0, 73.0}, 1000, 4.1, 31);
    const auto r = fit_ci(s);
    CHECK(std::abs(std::get<CiModel>(r.model).n - 3.0) <= 0.1);
    CHECK(std::abs(r.sf_sigma / 4.1 - 1.0) <= 0.1);
}

TEST_CASE("CIF slope stays near zero on frequency-flat data")
{
    const auto s = synth(CiModel{2.9}, {28.0, 73.0}, 2000, 1.0, 32);
    CHECK(std::abs(std::get<CifModel>(fit_cif(s).model).b) <= 0.01);
    const auto outdoor = synth(CiModel{3.0}, {5.6, 10.0, 18.0, 28.0, 39.3, 73.5}, 3000, 6.8, 33);
    CHECK(std::abs(std::get<CifModel>(fit_cif(outdoor).model).b) < 0.05);
}

TEST_CASE("seeded noisy ABG fit")
{
    const auto s = synth(AbgModel{3.4, 19.2, 2.3}, {28.0, 73.0}, 2000, 6.5, 34);
    CHECK(std::abs(std::get<AbgModel>(fit_abg(s).model).alpha - 3.4) <= 0.15);
}

TEST_CASE("NYU-squared data favours the NYU row and comparisons are deterministic")
{
    Rng rng(35);
    std::vector<LosSample> s;
    for (int i = 0; i < 20000; ++i) {
        const double d = rng.uniform(1.0, 300.0);
        s.push_back({d, rng.bernoulli(p_los_nyu_squared({20.0, 160.0}, d))});
    }
    const auto a = compare_los_models(s);
    const auto b = compare_los_models(s);
    CHECK(a.rows[2].mse <= a.rows[1].mse);
    CHECK(a.rows[2].mse <= a.rows[0].mse);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.rows[i].mse == b.rows[i].mse);
        CHECK(a.rows[i].params.d1 == b.rows[i].params.d1);
        CHECK(a.rows[i].params.d2 == b.rows[i].params.d2);
    }
}

TEST_CASE("LOS fit needs two bins")
{
    const std::vector<LosSample> s{{3.0, true}, {4.0, false}};
    CHECK_THROWS_AS(fit_los_probability(s, LosFitModel::D1D2), ValidationError);
}
