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

#ifndef CHANLAB_SERIALIZE_HPP
#define CHANLAB_SERIALIZE_HPP

#include "chanlab/chanstats.hpp"
#include "chanlab/clustering.hpp"
#include "chanlab/core.hpp"
#include "chanlab/dropsim.hpp"
#include "chanlab/fitting.hpp"
#include "chanlab/geometry.hpp"

#include <json.hpp>

#include <ostream>
#include <span>
#include <string>

namespace chanlab {

using json = nlohmann::json;

// Scenario catalog: one object per scenario with nested ci, abg (null for
// LOS rows) and los objects.
json to_json(const ScenarioParams& p);
json catalog_json();

json to_json(const FitReport& r);
json to_json(const LosFitResult& r);
json to_json(const LosComparison& c);

// {"polygons": [[[x, y], ...], ...]}
BuildingMap map_from_json(const json& j);
BuildingMap load_map_file(const std::string& path);
json to_json(const BuildingMap& m);

DropConfig drop_config_from_json(const json& j);
json to_json(const DropConfig& c);
json to_json(const LosModel& m);
LosModel los_model_from_json(const json& j);

/// FNV-1a 64 of the compact JSON text, as 16 hex digits.
std::string config_hash(const json& j);

json drop_summary_json(const DropResult& r, std::span<const double> percentiles);
void write_links_csv(std::ostream& out, const DropResult& r);

json to_json(const ClusterSet& cs);
json to_json(const SpreadSet& s);
json to_json(const SpreadReport& r);

json read_json_file(const std::string& path);

} // namespace chanlab

#endif
