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

#ifndef CHANLAB_PENETRATION_HPP
#define CHANLAB_PENETRATION_HPP

#include "chanlab/core.hpp"

#include <string_view>

namespace chanlab {

/// Building class for the parabolic penetration loss 10 log10(A + B f^2).
enum class BplClass { LowLoss, HighLoss };

struct BplCoefficients {
    double a;
    double b;
};

constexpr BplCoefficients bpl_coefficients(BplClass c)
{
    return c == BplClass::LowLoss ? BplCoefficients{5.0, 0.03} : BplCoefficients{10.0, 5.0};
}

std::string_view bpl_class_name(BplClass c);
BplClass parse_bpl_class(std::string_view name);

/// Outdoor-to-indoor add-ons on top of the facade loss.
///
/// The grazing-incidence surcharge is shaped as surcharge_max * (1 - cos theta),
/// zero at normal incidence and approaching surcharge_max at grazing. Only the
/// magnitude (15-20 dB) is measured; the cosine shape is a modelling choice.
/// Indoor loss is linear in depth at a frequency-independent rate.
struct O2iConfig {
    double incidence_surcharge_max_db = 20.0; // [0, 20]
    double depth_loss_db_per_m = 0.5;         // [0.2, 2]

    // Throws ValidationError when either field leaves its measured range.
    void validate() const;
};

double bpl(BplClass c, Frequency f);

double incidence_surcharge(double incidence_deg, const O2iConfig& cfg);

double o2i_loss(BplClass c, Frequency f, double depth_m, double incidence_deg, const O2iConfig& cfg);

} // namespace chanlab

#endif
