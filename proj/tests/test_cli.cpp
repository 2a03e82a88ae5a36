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

#include "cli.hpp"

#include "chanlab/csv.hpp"
#include "chanlab/serialize.hpp"
#include "synth_rays.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chanlab;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "chanlab_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

std::string read(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("usage errors exit with 2")
{
    CHECK(call({}).code == cli::exit_validation);
    CHECK(call({"nonsense"}).code == cli::exit_validation);
    CHECK(call({"eval", "--model", "xyz", "--freq", "28", "--dist", "10"}).code == cli::exit_validation);
    CHECK(call({"eval", "--model", "ci", "--n", "2", "--freq", "28", "--dist", "0.5"}).code == cli::exit_validation);
    CHECK(call({"eval", "--model", "abg", "--scenario", "uma-los", "--freq", "28", "--dist", "10"}).code ==
          cli::exit_validation);
    CHECK(call({"--help"}).code == cli::exit_ok);
}

TEST_CASE("catalog lists six scenarios")
{
    const auto r = call({"catalog"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["scenarios"].size() == 6);
    CHECK(j["scenarios"][1]["abg"]["alpha"] == 3.4);
    CHECK(j["scenarios"][0]["abg"].is_null());
}

TEST_CASE("eval warns outside the band")
{
    const auto r = call({"eval", "--model", "ci", "--n", "2", "--freq", "150", "--dist", "10"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("eval output feeds fit")
{
    const auto csv = scratch("pl.csv");
    REQUIRE(call({"eval", "--model", "abg", "--scenario", "umi-os-nlos", "--freq", "28", "73", "--dist-range", "5",
                  "800", "30", "--out", csv.string()})
                .code == 0);
    const auto r = call({"fit", "--input", csv.string(), "--model", "abg"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["report"]["params"]["alpha"].get<double>() == doctest::Approx(4.14).epsilon(1e-9));
    CHECK(j["report"]["params"]["gamma"].get<double>() == doctest::Approx(2.43).epsilon(1e-9));
}

TEST_CASE("singular fits exit with 3")
{
    const auto csv = scratch("one_freq.csv");
    REQUIRE(call({"eval", "--model", "ci", "--n", "3", "--freq", "28", "--dist-range", "5", "800", "10", "--out",
                  csv.string()})
                .code == 0);
    CHECK(call({"fit", "--input", csv.string(), "--model", "abg"}).code == cli::exit_numeric);
}

TEST_CASE("malformed CSV names the line")
{
    const auto csv = scratch("bad.csv");
    write(csv, "freq_ghz,dist_m,pl_db,los\n28,10,90,0\n28,abc,95,1\n");
    const auto r = call({"fit", "--input", csv.string(), "--model", "ci"});
    CHECK(r.code == cli::exit_validation);
    CHECK(r.err.find("bad.csv:3") != std::string::npos);
}

TEST_CASE("config file values are overridden by explicit flags")
{
    const auto cfg = scratch("bpl.json");
    write(cfg, R"({"class": "high", "freq": 28, "depth": 10})");
    const auto a = call({"bpl", "--config", cfg.string(), "--format", "json"});
    REQUIRE(a.code == 0);
    const auto ja = json::parse(a.out);
    CHECK(ja["rows"][0][1].get<double>() == doctest::Approx(35.9439).epsilon(1e-5));
    CHECK(ja["rows"][0][2].get<double>() == doctest::Approx(40.9439).epsilon(1e-5));
    const auto b = call({"bpl", "--config", cfg.string(), "--class", "low", "--format", "json"});
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["rows"][0][1].get<double>() == doctest::Approx(14.5515).epsilon(1e-5));
}

TEST_CASE("LOS probability table")
{
    const auto r = call({"losprob", "--model", "d1d2", "--d1", "18", "--d2", "36", "--dist", "100", "--format",
                         "json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["rows"][0][1].get<double>() == doctest::Approx(0.230985).epsilon(1e-5));
}

TEST_CASE("fit-los compares against the reference")
{
    const auto csv = scratch("los.csv");
    std::ostringstream os;
    os << "dist_m,los\n";
    Rng rng(1);
    for (int i = 0; i < 3000; ++i) {
        const double d = rng.uniform(1, 300);
        os << d << ',' << (rng.bernoulli(p_los_d1d2({18, 63}, d)) ? 1 : 0) << '\n';
    }
    write(csv, os.str());
    const auto r = call({"fit-los", "--input", csv.string(), "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("3GPP,18,63,") != std::string::npos);
    CHECK(r.out.find("NYU-squared,") != std::string::npos);
}

TEST_CASE("cluster then stats")
{
    const auto rays = testing::three_groups(4);
    std::ostringstream os;
    os << "link_id,delay_ns,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg,power_db,xpr_db\n";
    for (const auto& r : rays)
        os << r.link_id << ',' << format_number(r.delay_ns) << ',' << format_number(r.aod_az_deg) << ','
           << format_number(r.aod_el_deg) << ',' << format_number(r.aoa_az_deg) << ','
           << format_number(r.aoa_el_deg) << ',' << format_number(linear_to_db(r.power)) << ",10\n";
    const auto in = scratch("rays.csv");
    write(in, os.str());
    const auto assign = scratch("assign.csv");
    const auto stats_json = scratch("clusters.json");
    const auto c = call({"cluster", "--input", in.string(), "--seed", "3", "--restarts", "5", "--out",
                         assign.string(), "--stats", stats_json.string()});
    REQUIRE(c.code == 0);
    const auto cj = json::parse(read(stats_json));
    CHECK(cj["links"][0]["clusters"].size() == 3);
    CHECK(cj["config"]["seed"] == 3);

    const auto again = scratch("assign2.csv");
    REQUIRE(call({"cluster", "--input", in.string(), "--seed", "3", "--restarts", "5", "--out", again.string()})
                .code == 0);
    const auto body = [](const std::string& text) { return text.substr(text.find('\n') + 1); };
    CHECK(body(read(assign)) == body(read(again)));

    const auto s = call({"stats", "--input", in.string(), "--assignment", assign.string()});
    REQUIRE(s.code == 0);
    const auto sj = json::parse(s.out);
    CHECK(sj["links"][0]["per_cluster"].size() == 3);
}

TEST_CASE("drop writes links and summary")
{
    const auto cfg = scratch("drop.json");
    write(cfg, R"({"environment": "umi-sc", "seed": 11, "placement": {"type": "disc", "ue_count": 500}})");
    const auto prefix = scratch("run").string();
    REQUIRE(call({"drop", "--config", cfg.string(), "--out", prefix}).code == 0);
    const auto links = read(prefix + ".links.csv");
    CHECK(links.rfind("# seed=11\n", 0) == 0);
    const auto summary = json::parse(read(prefix + ".summary.json"));
    CHECK(summary["config"]["los_scenario"] == "umi-sc-los");

    REQUIRE(call({"drop", "--config", cfg.string(), "--out", prefix + "2"}).code == 0);
    CHECK(links == read(prefix + "2.links.csv"));

    const auto seeded = call({"drop", "--config", cfg.string(), "--seed", "12", "--format", "csv"});
    REQUIRE(seeded.code == 0);
    CHECK(seeded.out.rfind("# seed=12\n", 0) == 0);

    write(cfg, R"({"environment": "umi-sc", "bogus": 1})");
    CHECK(call({"drop", "--config", cfg.string()}).code == cli::exit_validation);
}

TEST_CASE("eval reference values")
{
    const auto ci = call({"eval", "--model", "ci", "--scenario", "uma-los", "--freq", "28", "--dist", "100",
                          "--format", "json"});
    REQUIRE(ci.code == 0);
    CHECK(json::parse(ci.out)["rows"][0][2].get<double>() == doctest::Approx(101.391).epsilon(1e-4));
    const auto abg = call({"eval", "--model", "abg", "--scenario", "umi-sc-nlos", "--freq", "28", "--dist", "100",
                           "--format", "json"});
    REQUIRE(abg.code == 0);
    CHECK(json::parse(abg.out)["rows"][0][2].get<double>() == doctest::Approx(124.483).epsilon(1e-4));
}

TEST_CASE("a map requires map LOS mode")
{
    const auto map = scratch("map.json");
    write(map, R"({"polygons": [[[10, 10], [20, 10], [20, 20], [10, 20]]]})");
    const auto cfg = scratch("drop_stochastic.json");
    write(cfg, R"({"environment": "uma", "seed": 1, "placement": {"type": "disc", "ue_count": 10}})");
    CHECK(call({"drop", "--config", cfg.string(), "--map", map.string()}).code == cli::exit_validation);

    write(cfg, R"({"environment": "uma", "seed": 1, "los_mode": "map", "placement": {"type": "disc", "ue_count": 50}})");
    const auto r = call({"drop", "--config", cfg.string(), "--map", map.string()});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["map"] == map.string());
}
