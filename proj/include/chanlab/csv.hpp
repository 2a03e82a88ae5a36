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

#ifndef CHANLAB_CSV_HPP
#define CHANLAB_CSV_HPP

#include "chanlab/fitting.hpp"
#include "chanlab/rays.hpp"

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chanlab {

/// Comma-separated table. Blank lines and lines starting with '#' are skipped;
/// line numbers refer to the original input (1-based).
struct CsvTable {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;

    // Column index or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
    // Throws ValidationError naming the source when the column is missing.
    std::size_t require_column(std::string_view name) const;

    double number(std::size_t row, std::size_t col) const;
    bool flag(std::size_t row, std::size_t col) const; // 0 or 1
};

CsvTable read_csv(std::istream& in, std::string source);
CsvTable read_csv_file(const std::string& path);

/// freq_ghz,dist_m,pl_db,los[,weight]
std::vector<PathLossSample> path_loss_samples(const CsvTable& t);
/// dist_m,los
std::vector<LosSample> los_samples(const CsvTable& t);
/// link_id,delay_ns,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg,power_db[,xpr_db]
/// Power is converted from dB to linear.
std::vector<RayRecord> ray_records(const CsvTable& t);

/// Shortest text that round-trips to the same double (at most 17 digits).
std::string format_number(double v);

} // namespace chanlab

#endif
