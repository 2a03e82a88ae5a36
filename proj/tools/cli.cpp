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

#include "cli.hpp"

#include "chanlab/chanstats.hpp"
#include "chanlab/clustering.hpp"
#include "chanlab/core.hpp"
#include "chanlab/csv.hpp"
#include "chanlab/dropsim.hpp"
#include "chanlab/error.hpp"
#include "chanlab/fitting.hpp"
#include "chanlab/los.hpp"
#include "chanlab/pathloss.hpp"
#include "chanlab/penetration.hpp"
#include "chanlab/serialize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace chanlab::cli {

namespace {

struct Common {
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string out;
    std::string format;
};

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw ValidationError("cannot write '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f)
        throw ValidationError("cannot write '" + path + "'");
    f << text;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit_table(const Table& t, const json& meta, const std::string& format, std::ostream& os)
{
    if (format == "json") {
        json j = meta;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        os << j.dump(2) << '\n';
        return;
    }
    os << "# " << meta.dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << format_number(r[i]);
        os << '\n';
    }
}

// Resolved option values of a subcommand, for the output metadata.
json resolved_options(const CLI::App& sub, const Common& common)
{
    json opts = json::object();
    for (const CLI::Option* o : sub.get_options()) {
        const auto name = o->get_single_name();
        if (name.empty() || name == "help" || name == "config" || name == "out" || name == "seed")
            continue;
        if (o->count() > 0) {
            const auto& res = o->results();
            opts[name] = res.size() == 1 ? json(res.front()) : json(res);
        } else if (!o->get_default_str().empty() && o->get_default_str() != "{}") {
            opts[name] = o->get_default_str();
        }
    }
    if (common.seed)
        opts["seed"] = *common.seed;
    return opts;
}

json metadata(const std::string& command, const CLI::App& sub, const Common& common)
{
    return {{"command", command}, {"config", resolved_options(sub, common)}};
}

std::uint64_t resolve_seed(Common& common, std::ostream& err)
{
    if (!common.seed) {
        std::random_device rd;
        common.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        err << "seed: " << *common.seed << " (generated)\n";
    }
    return *common.seed;
}

std::vector<double> distances(const std::vector<double>& single, const std::vector<double>& range, bool linear)
{
    if (!single.empty() && !range.empty())
        throw ValidationError("use either --dist or --dist-range, not both");
    if (!single.empty())
        return single;
    if (range.size() != 3)
        throw ValidationError("give --dist or --dist-range LO HI COUNT");
    const double lo = range[0], hi = range[1];
    const auto count = static_cast<long>(range[2]);
    if (count < 1 || static_cast<double>(count) != range[2])
        throw ValidationError("--dist-range COUNT must be a positive integer");
    if (!(lo > 0.0) || !(hi >= lo))
        throw ValidationError("--dist-range needs 0 < LO <= HI");
    std::vector<double> out;
    for (long i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(linear ? lo + t * (hi - lo) : lo * std::pow(hi / lo, t));
    }
    out.back() = hi;
    return out;
}

void warn_band(const std::vector<double>& freqs, std::ostream& err)
{
    for (double f : freqs)
        if (auto w = band_warning(Frequency(f)))
            err << "warning: " << *w << '\n';
}

// Expands a flat JSON object into "--key value" arguments (underscores become
// dashes). Arrays repeat the values, true booleans become bare flags.
std::vector<std::string> config_args(const json& j)
{
    if (!j.is_object())
        throw ValidationError("--config file must hold a JSON object");
    std::vector<std::string> out;
    for (const auto& [key, v] : j.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        auto scalar = [](const json& x) {
            return x.is_string() ? x.get<std::string>() : x.dump();
        };
        if (v.is_boolean()) {
            if (v.get<bool>())
                out.push_back(flag);
        } else if (v.is_array()) {
            out.push_back(flag);
            for (const auto& e : v)
                out.push_back(scalar(e));
        } else if (!v.is_null()) {
            out.push_back(flag);
            out.push_back(scalar(v));
        }
    }
    return out;
}

} // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"chanlab: outdoor urban channel models (0.5-100 GHz)", "chanlab"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Common common;
    std::map<const CLI::App*, std::string> formats_by_sub;
    auto add_common = [&](CLI::App* sub, const std::string& default_format,
                          std::vector<std::string> formats) {
        sub->add_option("--seed", common.seed, "Master random seed");
        sub->add_option("--config", common.config, "JSON configuration file");
        sub->add_option("--out", common.out, "Output path (default stdout)");
        auto& format = formats_by_sub[sub];
        format = default_format;
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
    };

    // ---- catalog
    auto* catalog = app.add_subcommand("catalog", "Print the scenario parameter catalog");
    add_common(catalog, "json", {"json", "csv"});

    // ---- eval
    auto* eval = app.add_subcommand("eval", "Evaluate a path loss model");
    std::string eval_model;
    std::string eval_scenario;
    std::optional<double> p_n, p_b, p_f0, p_alpha, p_beta, p_gamma;
    std::vector<double> eval_freq, eval_dist, eval_range;
    bool eval_linear = false;
    int eval_los = 0;
    eval->add_option("--model", eval_model, "ci, cif or abg")->required()->check(CLI::IsMember({"ci", "cif", "abg"}));
    eval->add_option("--scenario", eval_scenario, "Catalog scenario, e.g. uma-los");
    eval->add_option("--n", p_n, "Path loss exponent (ci, cif)");
    eval->add_option("--b", p_b, "CIF frequency slope");
    eval->add_option("--f0", p_f0, "CIF centroid frequency [GHz]");
    eval->add_option("--alpha", p_alpha, "ABG distance coefficient");
    eval->add_option("--beta", p_beta, "ABG offset [dB]");
    eval->add_option("--gamma", p_gamma, "ABG frequency coefficient");
    eval->add_option("--freq", eval_freq, "Frequency [GHz]")->required();
    eval->add_option("--dist", eval_dist, "Distance(s) [m]");
    eval->add_option("--dist-range", eval_range, "LO HI COUNT")->expected(3);
    eval->add_flag("--linear", eval_linear, "Linear distance spacing for --dist-range");
    eval->add_option("--los", eval_los, "LOS flag written with explicit parameters")->check(CLI::Range(0, 1));
    add_common(eval, "csv", {"csv", "json"});

    // ---- losprob
    auto* losprob = app.add_subcommand("losprob", "Tabulate LOS probability against distance");
    std::string lp_model = "all";
    std::optional<double> lp_d1, lp_d2;
    std::string lp_scenario;
    double lp_h = 1.5;
    std::vector<double> lp_dist, lp_range;
    bool lp_linear = false;
    losprob->add_option("--model", lp_model)->check(CLI::IsMember({"d1d2", "nyu_squared", "3gpp_uma", "all"}));
    losprob->add_option("--d1", lp_d1, "d1 [m]");
    losprob->add_option("--d2", lp_d2, "d2 [m]");
    losprob->add_option("--scenario", lp_scenario, "Take d1/d2 from a catalog scenario");
    losprob->add_option("--h-ut", lp_h, "UE height for 3gpp_uma [m]");
    losprob->add_option("--dist", lp_dist, "Distance(s) [m]");
    losprob->add_option("--dist-range", lp_range, "LO HI COUNT")->expected(3);
    losprob->add_flag("--linear", lp_linear);
    add_common(losprob, "csv", {"csv", "json"});

    // ---- bpl
    auto* bplc = app.add_subcommand("bpl", "Building penetration and outdoor-to-indoor loss");
    std::string bpl_cls = "low";
    std::vector<double> bpl_freq, bpl_range;
    double bpl_depth = 0.0, bpl_angle = 0.0;
    O2iConfig o2i;
    bplc->add_option("--class", bpl_cls)->check(CLI::IsMember({"low", "high"}));
    bplc->add_option("--freq", bpl_freq, "Frequency [GHz]");
    bplc->add_option("--freq-range", bpl_range, "LO HI COUNT (linear)")->expected(3);
    bplc->add_option("--depth", bpl_depth, "Indoor depth [m]");
    bplc->add_option("--angle", bpl_angle, "Incidence angle from the wall normal [deg]");
    bplc->add_option("--incidence-surcharge-max-db", o2i.incidence_surcharge_max_db);
    bplc->add_option("--depth-loss-db-per-m", o2i.depth_loss_db_per_m);
    add_common(bplc, "csv", {"csv", "json"});

    // ---- fit
    auto* fitc = app.add_subcommand("fit", "Fit a path loss model to samples");
    std::string fit_input, fit_model, fit_residuals, fit_subset = "all";
    fitc->add_option("--input", fit_input, "CSV freq_ghz,dist_m,pl_db,los[,weight]")->required();
    fitc->add_option("--model", fit_model)->required()->check(CLI::IsMember({"ci", "cif", "abg"}));
    fitc->add_option("--residuals", fit_residuals, "Write per-sample residual CSV here");
    fitc->add_option("--subset", fit_subset)->check(CLI::IsMember({"all", "los", "nlos"}));
    add_common(fitc, "json", {"json", "csv", "table"});

    // ---- fit-los
    auto* fitlos = app.add_subcommand("fit-los", "Fit LOS probability models to binned LOS samples");
    std::string fl_input, fl_model = "compare", fl_reference = "uma";
    double fl_bin = 10.0;
    fitlos->add_option("--input", fl_input, "CSV dist_m,los")->required();
    fitlos->add_option("--model", fl_model)->check(CLI::IsMember({"d1d2", "nyu_squared", "compare"}));
    fitlos->add_option("--bin-width", fl_bin, "Distance bin width [m]");
    fitlos->add_option("--reference", fl_reference, "3GPP reference pair")->check(CLI::IsMember({"uma", "umi"}));
    add_common(fitlos, "json", {"json", "csv"});

    // ---- cluster
    auto* clus = app.add_subcommand("cluster", "Cluster rays per link");
    std::string cl_input, cl_stats;
    ClusteringConfig ccfg;
    clus->add_option("--input", cl_input, "Ray CSV")->required();
    clus->add_option("--k-min", ccfg.k_min);
    clus->add_option("--k-max", ccfg.k_max);
    clus->add_option("--prune-p", ccfg.prune_p);
    clus->add_option("--prune-s", ccfg.prune_s);
    clus->add_option("--restarts", ccfg.restarts);
    clus->add_option("--zeta", ccfg.zeta);
    clus->add_option("--max-iterations", ccfg.max_iterations);
    clus->add_option("--stats", cl_stats, "Also write per-cluster statistics JSON here");
    add_common(clus, "csv", {"csv", "json"});

    // ---- stats
    auto* stats = app.add_subcommand("stats", "Delay/angle spreads and XPR per link");
    std::string st_input, st_assign;
    stats->add_option("--input", st_input, "Ray CSV")->required();
    stats->add_option("--assignment", st_assign, "Cluster assignment CSV from 'cluster'");
    add_common(stats, "json", {"json", "csv"});

    // ---- drop
    auto* drop = app.add_subcommand("drop", "Monte-Carlo drop simulation");
    std::string dr_map;
    std::vector<double> dr_pct{1, 5, 10, 50, 90, 95, 99};
    drop->add_option("--map", dr_map, "Building map JSON");
    drop->add_option("--percentiles", dr_pct, "Coupling loss percentiles");
    add_common(drop, "json", {"json", "csv"});

    std::vector<std::string> args = args_in;
    try {
        // --config JSON expands to flags placed before the explicit ones.
        if (!args.empty() && args.front() != "drop") {
            for (std::size_t i = 1; i + 1 < args.size(); ++i)
                if (args[i] == "--config") {
                    const auto extra = config_args(read_json_file(args[i + 1]));
                    args.insert(args.begin() + 1, extra.begin(), extra.end());
                    break;
                }
        }
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }

    for (const auto& [sub, format] : formats_by_sub)
        if (sub->parsed())
            common.format = format;

    try {
        // ------------------------------------------------------------------
        if (catalog->parsed()) {
            Sink sink(common.out, out);
            const json meta = metadata("catalog", *catalog, common);
            if (common.format == "json") {
                json j = meta;
                j["scenarios"] = catalog_json();
                sink.stream() << j.dump(2) << '\n';
            } else {
                sink.stream() << "# " << meta.dump() << '\n';
                sink.stream() << "scenario,ci_n,ci_sigma_db,abg_alpha,abg_beta,abg_gamma,abg_sigma_db,los_d1,los_d2\n";
                for (const auto id : all_scenarios) {
                    const auto& p = catalog_lookup(id);
                    auto abg = [&](double v) { return p.abg_available ? format_number(v) : std::string("NA"); };
                    sink.stream() << scenario_name(id) << ',' << format_number(p.ci_n) << ','
                                  << format_number(p.ci_sigma) << ',' << abg(p.abg_alpha) << ',' << abg(p.abg_beta)
                                  << ',' << abg(p.abg_gamma) << ',' << abg(p.abg_sigma) << ','
                                  << format_number(p.los_d1) << ',' << format_number(p.los_d2) << '\n';
                }
            }
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (eval->parsed()) {
            const bool explicit_params = p_n || p_b || p_f0 || p_alpha || p_beta || p_gamma;
            if (!eval_scenario.empty() && explicit_params)
                throw ValidationError("give either --scenario or explicit model parameters, not both");
            PlModel model;
            int los_flag = eval_los;
            const auto kind = parse_model_kind(eval_model);
            if (!eval_scenario.empty()) {
                const auto& sp = catalog_lookup(parse_scenario(eval_scenario));
                los_flag = is_los_scenario(sp.id) ? 1 : 0;
                if (kind == PlModelKind::CI)
                    model = ci_model(sp);
                else if (kind == PlModelKind::ABG)
                    model = abg_model(sp);
                else
                    throw ValidationError("the catalog has no CIF parameters; pass --n, --b and --f0");
            } else {
                auto need = [](const std::optional<double>& v, const char* flag) {
                    if (!v)
                        throw ValidationError(std::string("missing ") + flag + " (or use --scenario)");
                    return *v;
                };
                if (kind == PlModelKind::CI)
                    model = CiModel{need(p_n, "--n")};
                else if (kind == PlModelKind::CIF)
                    model = CifModel{need(p_n, "--n"), need(p_b, "--b"), Frequency(need(p_f0, "--f0"))};
                else
                    model = AbgModel{need(p_alpha, "--alpha"), need(p_beta, "--beta"), need(p_gamma, "--gamma")};
            }
            warn_band(eval_freq, err);
            const auto ds = distances(eval_dist, eval_range, eval_linear);
            Table t{{"freq_ghz", "dist_m", "pl_db", "los"}, {}};
            for (double f : eval_freq)
                for (double d : ds)
                    t.rows.push_back({f, d, evaluate(model, Frequency(f), d), static_cast<double>(los_flag)});
            Sink sink(common.out, out);
            emit_table(t, metadata("eval", *eval, common), common.format, sink.stream());
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (losprob->parsed()) {
            D1D2Params p = uma_3gpp_params;
            if (!lp_scenario.empty()) {
                if (lp_d1 || lp_d2)
                    throw ValidationError("give either --scenario or --d1/--d2, not both");
                const auto& sp = catalog_lookup(parse_scenario(lp_scenario));
                p = {sp.los_d1, sp.los_d2};
            }
            if (lp_d1)
                p.d1 = *lp_d1;
            if (lp_d2)
                p.d2 = *lp_d2;
            const auto ds = distances(lp_dist, lp_range, lp_linear);
            Table t;
            t.columns.push_back("dist_m");
            std::vector<LosModel> models;
            if (lp_model == "d1d2" || lp_model == "all") {
                models.push_back(LosD1D2{p});
                t.columns.push_back("p_d1d2");
            }
            if (lp_model == "nyu_squared" || lp_model == "all") {
                models.push_back(LosNyuSquared{p});
                t.columns.push_back("p_nyu_squared");
            }
            if (lp_model == "3gpp_uma" || lp_model == "all") {
                models.push_back(LosUma3gpp{lp_h});
                t.columns.push_back("p_3gpp_uma");
            }
            for (double d : ds) {
                std::vector<double> row{d};
                for (const auto& m : models)
                    row.push_back(p_los(m, d));
                t.rows.push_back(std::move(row));
            }
            Sink sink(common.out, out);
            emit_table(t, metadata("losprob", *losprob, common), common.format, sink.stream());
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (bplc->parsed()) {
            o2i.validate();
            std::vector<double> freqs = bpl_freq;
            if (!bpl_range.empty()) {
                if (!freqs.empty())
                    throw ValidationError("use either --freq or --freq-range, not both");
                const auto count = static_cast<long>(bpl_range[2]);
                if (count < 1)
                    throw ValidationError("--freq-range COUNT must be positive");
                for (long i = 0; i < count; ++i) {
                    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
                    freqs.push_back(bpl_range[0] + t * (bpl_range[1] - bpl_range[0]));
                }
            }
            if (freqs.empty())
                throw ValidationError("give --freq or --freq-range");
            warn_band(freqs, err);
            const auto cls = parse_bpl_class(bpl_cls);
            Table t{{"freq_ghz", "bpl_db", "o2i_db"}, {}};
            for (double f : freqs)
                t.rows.push_back({f, bpl(cls, Frequency(f)), o2i_loss(cls, Frequency(f), bpl_depth, bpl_angle, o2i)});
            Sink sink(common.out, out);
            emit_table(t, metadata("bpl", *bplc, common), common.format, sink.stream());
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (fitc->parsed()) {
            auto samples = path_loss_samples(read_csv_file(fit_input));
            if (fit_subset != "all") {
                const bool want = fit_subset == "los";
                std::erase_if(samples, [&](const PathLossSample& s) { return s.los != want; });
            }
            const auto rep = fit(parse_model_kind(fit_model), samples);
            for (const auto& w : rep.warnings)
                err << "warning: " << w << '\n';
            const json meta = metadata("fit", *fitc, common);
            Sink sink(common.out, out);
            const json rj = to_json(rep);
            if (common.format == "json") {
                json j = meta;
                j["report"] = rj;
                sink.stream() << j.dump(2) << '\n';
            } else if (common.format == "csv") {
                sink.stream() << "# " << meta.dump() << "\nname,value\n";
                for (const auto& [k, v] : rj["params"].items())
                    sink.stream() << k << ',' << format_number(v.get<double>()) << '\n';
                sink.stream() << "sf_sigma_db," << format_number(rep.sf_sigma) << '\n'
                              << "residual_mean_db," << format_number(rep.residual_mean) << '\n'
                              << "mse_db2," << format_number(rep.mse) << '\n'
                              << "sample_count," << rep.sample_count << '\n';
            } else {
                auto& os = sink.stream();
                os << "model         " << model_kind_name(rep.kind()) << '\n';
                for (const auto& [k, v] : rj["params"].items()) {
                    std::string key = k;
                    key.resize(14, ' ');
                    os << key << v.get<double>() << '\n';
                }
                os << "SF sigma [dB] " << rep.sf_sigma << '\n' << "samples       " << rep.sample_count << '\n';
            }
            if (!fit_residuals.empty()) {
                std::ostringstream rs;
                rs << "freq_ghz,dist_m,pl_db,model_db,residual_db\n";
                const auto r = residuals(rep.model, samples);
                for (std::size_t i = 0; i < samples.size(); ++i)
                    rs << format_number(samples[i].f.ghz()) << ',' << format_number(samples[i].d_m) << ','
                       << format_number(samples[i].pl_db) << ',' << format_number(samples[i].pl_db - r[i]) << ','
                       << format_number(r[i]) << '\n';
                write_file(fit_residuals, rs.str());
            }
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (fitlos->parsed()) {
            const auto samples = los_samples(read_csv_file(fl_input));
            const D1D2Params ref = fl_reference == "uma" ? uma_3gpp_params : umi_3gpp_params;
            const json meta = metadata("fit-los", *fitlos, common);
            Sink sink(common.out, out);
            LosComparison cmp;
            json body;
            if (fl_model == "compare") {
                cmp = compare_los_models(samples, fl_bin, ref);
                body = to_json(cmp);
            } else {
                const auto m = fl_model == "d1d2" ? LosFitModel::D1D2 : LosFitModel::NyuSquared;
                const auto r = fit_los_probability(samples, m, fl_bin);
                if (r.degenerate)
                    err << "warning: " << r.note << '\n';
                cmp.rows.push_back({std::string(los_fit_model_name(m)), r.params, r.mse});
                cmp.bin_width_m = fl_bin;
                cmp.bin_count = r.bins.size();
                body = to_json(r);
            }
            if (common.format == "json") {
                json j = meta;
                j["result"] = body;
                sink.stream() << j.dump(2) << '\n';
            } else {
                sink.stream() << "# " << meta.dump() << "\nmodel,d1_m,d2_m,mse\n";
                for (const auto& r : cmp.rows)
                    sink.stream() << r.name << ',' << format_number(r.params.d1) << ','
                                  << format_number(r.params.d2) << ',' << format_number(r.mse) << '\n';
            }
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (clus->parsed()) {
            ccfg.seed = resolve_seed(common, err);
            ccfg.validate();
            const auto rays = ray_records(read_csv_file(cl_input));
            std::map<std::string, std::vector<std::size_t>> by_link;
            for (std::size_t i = 0; i < rays.size(); ++i)
                by_link[rays[i].link_id].push_back(i);

            const json meta = metadata("cluster", *clus, common);
            json links = json::array();
            std::ostringstream csv;
            csv << "# " << meta.dump() << '\n' << "link_id,ray_index,cluster,pruned\n";
            for (const auto& [link, idx] : by_link) {
                std::vector<RayRecord> lr;
                for (auto i : idx)
                    lr.push_back(rays[i]);
                const auto res = cluster_multirestart(lr, ccfg);
                const auto spreads = spread_report(lr, &res.best);
                json lj = to_json(res.best);
                lj["link_id"] = link;
                lj["best_restart"] = res.best_restart;
                lj["spreads"] = to_json(spreads);
                links.push_back(lj);
                for (std::size_t k = 0; k < idx.size(); ++k)
                    csv << link << ',' << idx[k] << ',' << res.best.assignment[k] << ','
                        << (res.best.pruned[k] ? 1 : 0) << '\n';
            }
            json full = meta;
            full["links"] = links;
            Sink sink(common.out, out);
            if (common.format == "json")
                sink.stream() << full.dump(2) << '\n';
            else
                sink.stream() << csv.str();
            if (!cl_stats.empty())
                write_file(cl_stats, full.dump(2) + "\n");
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (stats->parsed()) {
            const auto rays = ray_records(read_csv_file(st_input));
            std::map<std::string, std::vector<std::size_t>> by_link;
            for (std::size_t i = 0; i < rays.size(); ++i)
                by_link[rays[i].link_id].push_back(i);

            // ray_index -> (cluster, pruned)
            std::map<std::size_t, std::pair<std::size_t, bool>> assign;
            if (!st_assign.empty()) {
                const auto t = read_csv_file(st_assign);
                const auto ci = t.require_column("ray_index");
                const auto cc = t.require_column("cluster");
                const auto cp = t.require_column("pruned");
                for (std::size_t r = 0; r < t.rows.size(); ++r) {
                    const double ri = t.number(r, ci);
                    const double cl = t.number(r, cc);
                    if (ri < 0 || cl < 0 || ri != std::floor(ri) || cl != std::floor(cl))
                        throw ValidationError(t.source + ":" + std::to_string(t.line_numbers[r]) +
                                              ": ray_index and cluster must be non-negative integers");
                    assign[static_cast<std::size_t>(ri)] = {static_cast<std::size_t>(cl), t.flag(r, cp)};
                }
            }

            const json meta = metadata("stats", *stats, common);
            json links = json::array();
            Table t{{"cluster", "ray_count", "rms_delay_spread_ns", "asd_az_deg", "asa_az_deg", "asd_el_deg",
                     "asa_el_deg", "xpr_mean_db", "xpr_std_db"},
                    {}};
            std::vector<std::string> link_col;
            auto add_row = [&](const std::string& link, double cluster, const SpreadSet& s) {
                link_col.push_back(link);
                t.rows.push_back({cluster, static_cast<double>(s.ray_count), s.rms_delay_spread_ns, s.asd_az_deg,
                                  s.asa_az_deg, s.asd_el_deg, s.asa_el_deg, s.xpr ? s.xpr->mean_db : NAN,
                                  s.xpr ? s.xpr->std_db : NAN});
            };
            for (const auto& [link, idx] : by_link) {
                std::vector<RayRecord> lr;
                for (auto i : idx)
                    lr.push_back(rays[i]);
                std::optional<ClusterSet> cs;
                if (!assign.empty()) {
                    cs.emplace();
                    std::size_t k = 0;
                    for (auto i : idx) {
                        const auto it = assign.find(i);
                        if (it == assign.end())
                            throw ValidationError("assignment file has no entry for ray " + std::to_string(i));
                        cs->assignment.push_back(it->second.first);
                        cs->pruned.push_back(it->second.second);
                        k = std::max(k, it->second.first + 1);
                    }
                    cs->clusters.resize(k);
                }
                const auto rep = spread_report(lr, cs ? &*cs : nullptr);
                json lj = to_json(rep);
                lj["link_id"] = link;
                links.push_back(lj);
                add_row(link, -1.0, rep.global);
                for (std::size_t c = 0; c < rep.per_cluster.size(); ++c)
                    add_row(link, static_cast<double>(c), rep.per_cluster[c]);
            }
            Sink sink(common.out, out);
            if (common.format == "json") {
                json j = meta;
                j["links"] = links;
                sink.stream() << j.dump(2) << '\n';
            } else {
                auto& os = sink.stream();
                os << "# " << meta.dump() << "\nlink_id";
                for (const auto& c : t.columns)
                    os << ',' << c;
                os << '\n';
                for (std::size_t r = 0; r < t.rows.size(); ++r) {
                    os << link_col[r];
                    for (double v : t.rows[r])
                        os << ',' << (std::isfinite(v) ? format_number(v) : std::string());
                    os << '\n';
                }
            }
            return exit_ok;
        }

        // ------------------------------------------------------------------
        if (drop->parsed()) {
            if (common.config.empty())
                throw ValidationError("drop needs --config <drop.json>");
            const json cj = read_json_file(common.config);
            DropConfig cfg = drop_config_from_json(cj);
            if (!common.seed && cj.contains("seed"))
                common.seed = cfg.seed;
            cfg.seed = resolve_seed(common, err);
            std::optional<BuildingMap> map;
            if (!dr_map.empty())
                map = load_map_file(dr_map);
            cfg.validate(map.has_value());
            const auto res = run_drop(cfg, map ? &*map : nullptr);
            json summary = drop_summary_json(res, dr_pct);
            summary["command"] = "drop";
            if (!dr_map.empty())
                summary["map"] = dr_map;
            if (!common.out.empty()) {
                std::ostringstream links;
                write_links_csv(links, res);
                write_file(common.out + ".links.csv", links.str());
                write_file(common.out + ".summary.json", summary.dump(2) + "\n");
            } else if (common.format == "csv") {
                write_links_csv(out, res);
            } else {
                out << summary.dump(2) << '\n';
            }
            return exit_ok;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const SingularFitError& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}

} // namespace chanlab::cli
