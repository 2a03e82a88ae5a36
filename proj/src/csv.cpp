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

#include "chanlab/csv.hpp"

#include "chanlab/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace chanlab {

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r'))
        ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
        --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

} // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name) const
{
    if (auto c = column(name))
        return *c;
    throw ValidationError(source + ": missing required column '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const
{
    const auto& cell = rows[row][col];
    double v = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ValidationError(source + ":" + std::to_string(line_numbers[row]) + ": column '" + header[col] +
                              "' is not a finite number: '" + cell + "'");
    return v;
}

bool CsvTable::flag(std::size_t row, std::size_t col) const
{
    const auto& cell = rows[row][col];
    if (cell == "0" || cell == "false")
        return false;
    if (cell == "1" || cell == "true")
        return true;
    throw ValidationError(source + ":" + std::to_string(line_numbers[row]) + ": column '" + header[col] +
                          "' must be 0 or 1, got '" + cell + "'");
}

CsvTable read_csv(std::istream& in, std::string source)
{
    CsvTable t;
    t.source = std::move(source);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto s = trim(line);
        if (s.empty() || s.front() == '#')
            continue;
        auto cells = split(s);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size())
            throw ValidationError(t.source + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(t.header.size()) + " fields, got " + std::to_string(cells.size()));
        t.rows.push_back(std::move(cells));
        t.line_numbers.push_back(lineno);
    }
    if (!have_header)
        throw ValidationError(t.source + ": no header line");
    return t;
}

CsvTable read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    return read_csv(in, path);
}

std::vector<PathLossSample> path_loss_samples(const CsvTable& t)
{
    const auto cf = t.require_column("freq_ghz");
    const auto cd = t.require_column("dist_m");
    const auto cp = t.require_column("pl_db");
    const auto cl = t.require_column("los");
    const auto cw = t.column("weight");
    std::vector<PathLossSample> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        PathLossSample s;
        s.f = Frequency(t.number(r, cf));
        s.d_m = t.number(r, cd);
        s.pl_db = t.number(r, cp);
        s.los = t.flag(r, cl);
        s.weight = cw ? t.number(r, *cw) : 1.0;
        const auto where = t.source + ":" + std::to_string(t.line_numbers[r]);
        if (!(s.f.ghz() > 0.0))
            throw ValidationError(where + ": freq_ghz must be positive");
        if (!(s.d_m > 0.0))
            throw ValidationError(where + ": dist_m must be positive");
        if (!(s.weight > 0.0))
            throw ValidationError(where + ": weight must be positive");
        out.push_back(s);
    }
    return out;
}

std::vector<LosSample> los_samples(const CsvTable& t)
{
    const auto cd = t.require_column("dist_m");
    const auto cl = t.require_column("los");
    std::vector<LosSample> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        LosSample s{t.number(r, cd), t.flag(r, cl)};
        if (!(s.d_m > 0.0))
            throw ValidationError(t.source + ":" + std::to_string(t.line_numbers[r]) + ": dist_m must be positive");
        out.push_back(s);
    }
    return out;
}

std::vector<RayRecord> ray_records(const CsvTable& t)
{
    const auto c_link = t.require_column("link_id");
    const auto c_delay = t.require_column("delay_ns");
    const auto c_daz = t.require_column("aod_az_deg");
    const auto c_del = t.require_column("aod_el_deg");
    const auto c_aaz = t.require_column("aoa_az_deg");
    const auto c_ael = t.require_column("aoa_el_deg");
    const auto c_pow = t.require_column("power_db");
    const auto c_xpr = t.column("xpr_db");
    std::vector<RayRecord> out;
    out.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        RayRecord ray;
        ray.link_id = t.rows[r][c_link];
        ray.delay_ns = t.number(r, c_delay);
        ray.aod_az_deg = t.number(r, c_daz);
        ray.aod_el_deg = t.number(r, c_del);
        ray.aoa_az_deg = t.number(r, c_aaz);
        ray.aoa_el_deg = t.number(r, c_ael);
        ray.power = db_to_linear(t.number(r, c_pow));
        if (c_xpr && !t.rows[r][*c_xpr].empty())
            ray.xpr_db = t.number(r, *c_xpr);
        try {
            out.push_back(normalized(ray));
        } catch (const ValidationError& e) {
            throw ValidationError(t.source + ":" + std::to_string(t.line_numbers[r]) + ": " + e.what());
        }
    }
    return out;
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

} // namespace chanlab
