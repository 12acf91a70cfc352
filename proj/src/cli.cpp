#include "bibcount/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bibcount/bonus.hpp"
#include "bibcount/corpus.hpp"
#include "bibcount/counting.hpp"
#include "bibcount/indicators.hpp"
#include "bibcount/normalization.hpp"
#include "bibcount/report.hpp"
#include "bibcount/simulate.hpp"

namespace bibcount::cli {

namespace {

class ConfigFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::string corpus;
    std::string config;
    std::string out;
    std::string format = "csv";
    std::string mode = "standard";
    std::string baseline = "full";
    std::string group_by = "all";
    std::string broad_field_map;
    std::vector<std::string> levels;
    std::vector<std::string> methods;
    std::vector<std::string> indicators;
    std::vector<std::string> doc_types;
    std::size_t top_n = 0;
    std::uint64_t seed = 1;
    int precision = 6;
    bool exact = false;
};

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::vector<UnitLevel> levels_or(const Options& o, std::vector<UnitLevel> fallback) {
    if (o.levels.empty()) return fallback;
    std::vector<UnitLevel> out;
    for (const auto& l : o.levels) out.push_back(*parse_unit_level(l));
    return out;
}

UnitLevel single_level(const Options& o) {
    if (o.levels.size() > 1) throw ConfigFailure(o.command + " takes a single --level");
    return o.levels.empty() ? UnitLevel::Country : *parse_unit_level(o.levels.front());
}

std::vector<CountingMethod> requested_methods(const Options& o, UnitLevel level) {
    if (o.methods.empty()) return methods_at(level);
    std::vector<CountingMethod> out;
    for (const auto& m : o.methods) {
        CountingMethod method = *parse_counting_method(m);
        if (!method_valid_at(method, level))
            throw ConfigFailure("method " + m + " is not defined at " + std::string(to_string(level)) + " level");
        out.push_back(method);
    }
    return out;
}

std::vector<Indicator> requested_indicators(const Options& o) {
    if (o.indicators.empty()) return {Indicator::Mncs, Indicator::PpTop10};
    std::vector<Indicator> out;
    for (const auto& i : o.indicators) out.push_back(*parse_indicator(i));
    return out;
}

struct Corpus {
    std::vector<ResolvedPublication> pubs;
    Provenance provenance;
};

Corpus open_corpus(const Options& o) {
    if (o.corpus.empty()) throw ConfigFailure(o.command + " requires --corpus");
    std::filesystem::path path(o.corpus);
    if (!std::filesystem::is_regular_file(path)) throw CorpusError("cannot read corpus file " + o.corpus);
    DocTypeFilter filter;
    if (o.doc_types.empty()) {
        filter = default_doc_type_filter();
    } else {
        for (const auto& t : o.doc_types) filter.insert(*parse_doc_type(t));
    }
    Corpus c;
    auto records = load_corpus(path, filter);
    c.pubs = resolve_all(records);
    c.provenance.command = o.command;
    c.provenance.input_name = path.filename().string();
    c.provenance.input_sha256 = sha256_file(path);
    return c;
}

FieldYearTable<Rational> stats_for(const Options& o, std::span<const ResolvedPublication> pubs, UnitLevel level) {
    NormalizationMode mode = *parse_normalization_mode(o.mode);
    return build_field_year_stats<Rational>(pubs, mode, level);
}

void emit(const Options& o, std::ostream& out, const Table& table, const Provenance& prov) {
    NumberFormat fmt{o.precision, o.exact};
    OutputFormat format = *parse_output_format(o.format);
    if (o.out.empty()) {
        write_table(out, format, table, prov, fmt);
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw ConfigFailure("cannot write output file " + o.out);
    write_table(file, format, table, prov, fmt);
}

std::string method_list(const std::vector<CountingMethod>& methods) {
    std::vector<std::string> names;
    for (auto m : methods) names.emplace_back(to_string(m));
    return join(names);
}

std::string level_list(const std::vector<UnitLevel>& levels) {
    std::vector<std::string> names;
    for (auto l : levels) names.emplace_back(to_string(l));
    return join(names);
}

int cmd_validate(const Options& o, std::ostream& out) {
    if (o.corpus.empty()) throw ConfigFailure("validate requires --corpus");
    std::ifstream in(o.corpus);
    if (!in) throw CorpusError("cannot read corpus file " + o.corpus);
    DocTypeFilter filter;
    if (o.doc_types.empty()) {
        filter = default_doc_type_filter();
    } else {
        for (const auto& t : o.doc_types) filter.insert(*parse_doc_type(t));
    }
    CorpusReadResult result = read_corpus(in, filter);

    std::ostringstream report;
    report << result.records.size() << " records\n";
    if (result.filtered_out) report << result.filtered_out << " skipped by document type\n";
    std::size_t unassignable = 0;
    for (const auto& rec : result.records) {
        ResolvedPublication pub = resolve(rec);
        if (!pub.assignable) ++unassignable;
        for (std::size_t a = 0; pub.assignable && a < pub.author_links.size(); ++a) {
            if (pub.author_links[a].empty())
                report << "warning: record '" << rec.id << "': author " << a + 1 << " has no address links\n";
        }
    }
    if (unassignable) report << unassignable << " without any address\n";
    for (const auto& issue : result.issues) report << "error: " << issue.describe() << '\n';

    if (o.out.empty()) {
        out << report.str();
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw ConfigFailure("cannot write output file " + o.out);
        file << report.str();
    }
    return result.issues.empty() ? kSuccess : kCorpusError;
}

int cmd_weights(const Options& o, std::ostream& out) {
    Corpus c = open_corpus(o);
    const auto levels = levels_or(o, {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country});
    Table t{{"publication_id", "level", "method", "unit", "weight"}, {}};
    std::vector<std::string> used_methods;
    for (UnitLevel level : levels) {
        std::vector<CountingMethod> methods;
        if (o.methods.empty() || !o.levels.empty()) {
            methods = requested_methods(o, level);
        } else {
            for (const auto& m : o.methods)
                if (method_valid_at(*parse_counting_method(m), level)) methods.push_back(*parse_counting_method(m));
        }
        for (const auto& pub : c.pubs) {
            for (CountingMethod m : methods) {
                WeightVector wv = compute_weights(pub, level, m);
                std::string lv(to_string(level)), mv(to_string(m));
                if (!wv.assignable) {
                    t.rows.push_back({pub.id(), lv, mv, std::monostate{}, std::monostate{}});
                    continue;
                }
                for (const auto& w : wv.weights) t.rows.push_back({pub.id(), lv, mv, w.unit, w.weight});
            }
        }
    }
    c.provenance.options = {{"level", level_list(levels)},
                            {"method", o.methods.empty() ? "all" : join(o.methods)},
                            {"precision", o.exact ? "exact" : std::to_string(o.precision)}};
    emit(o, out, t, c.provenance);
    return kSuccess;
}

/// Units ranked by full-counting p, limited to n.
std::set<std::string> top_units(std::span<const ResolvedPublication> pubs, std::span<const NormalizedScores<Rational>> scores,
                                UnitLevel level, std::size_t n) {
    auto rows = unit_indicators<Rational>(pubs, scores, level, CountingMethod::Full);
    std::set<std::string> keep;
    for (std::size_t i = 0; i < rows.size() && i < n; ++i) keep.insert(rows[i].unit);
    return keep;
}

int cmd_indicators(const Options& o, std::ostream& out) {
    Corpus c = open_corpus(o);
    const UnitLevel level = single_level(o);
    const auto methods = requested_methods(o, level);
    const auto table = stats_for(o, c.pubs, level);
    const auto scores = score_corpus<Rational>(c.pubs, table);
    std::optional<std::set<std::string>> keep;
    if (o.top_n) keep = top_units(c.pubs, scores, level, o.top_n);

    Table t{{"row_type", "level", "method", "unit", "p", "mncs", "pp_top10"}, {}};
    for (CountingMethod m : methods) {
        auto rows = unit_indicators<Rational>(c.pubs, scores, level, m);
        std::string lv(to_string(level)), mv(to_string(m));
        for (const auto& r : rows) {
            if (keep && !keep->contains(r.unit)) continue;
            t.rows.push_back({std::string("unit"), lv, mv, r.unit, r.p, r.mncs, r.pp_top10});
        }
        if (rows.empty()) continue;
        Rational total = 0;
        for (const auto& r : rows) total += r.p;
        t.rows.push_back({std::string("world"), lv, mv, std::monostate{}, total,
                          world_average<Rational>(rows, Indicator::Mncs).value,
                          world_average<Rational>(rows, Indicator::PpTop10).value});
    }
    c.provenance.options = {{"level", std::string(to_string(level))},
                            {"method", method_list(methods)},
                            {"mode", o.mode},
                            {"top_n", o.top_n ? std::to_string(o.top_n) : "all"},
                            {"precision", o.exact ? "exact" : std::to_string(o.precision)}};
    emit(o, out, t, c.provenance);
    return kSuccess;
}

int cmd_compare(const Options& o, std::ostream& out) {
    Corpus c = open_corpus(o);
    const UnitLevel level = single_level(o);
    const auto methods = requested_methods(o, level);
    const CountingMethod baseline = *parse_counting_method(o.baseline);
    if (!method_valid_at(baseline, level))
        throw ConfigFailure("baseline " + o.baseline + " is not defined at " + std::string(to_string(level)) + " level");
    const auto table = stats_for(o, c.pubs, level);
    const auto scores = score_corpus<Rational>(c.pubs, table);
    std::optional<std::size_t> top_n;
    if (o.top_n) top_n = o.top_n;
    auto cmp = comparison_table<Rational>(c.pubs, scores, level, methods, baseline, top_n);

    Table t{{"unit", "method", "p", "mncs", "pp_top10", "p_decrease_pct", "mncs_decrease", "pp_top10_decrease"}, {}};
    for (const auto& row : cmp.rows) {
        for (const auto& e : row.entries) {
            std::optional<Rational> pct;
            if (e.p_decrease) pct = *e.p_decrease * 100;
            t.rows.push_back({row.unit, std::string(to_string(e.method)), e.p, number_cell(e.mncs),
                              number_cell(e.pp_top10), number_cell(pct), number_cell(e.mncs_decrease),
                              number_cell(e.pp_top10_decrease)});
        }
    }
    c.provenance.options = {{"level", std::string(to_string(level))},
                            {"method", method_list(cmp.methods)},
                            {"baseline", o.baseline},
                            {"mode", o.mode},
                            {"top_n", o.top_n ? std::to_string(o.top_n) : "all"},
                            {"precision", o.exact ? "exact" : std::to_string(o.precision)}};
    emit(o, out, t, c.provenance);
    return kSuccess;
}

int cmd_bonus(const Options& o, std::ostream& out, std::ostream& err) {
    Corpus c = open_corpus(o);
    const auto levels = levels_or(o, {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country});
    const auto indicators = requested_indicators(o);
    const Grouping grouping = *parse_grouping(o.group_by);
    std::optional<BroadFieldMap> broad;
    if (grouping == Grouping::BroadField) {
        if (o.broad_field_map.empty()) throw ConfigFailure("--group-by broad-field requires --broad-field-map");
        broad = load_broad_field_map(o.broad_field_map);
    }
    if (o.mode != "standard") throw ConfigFailure("bonus is computed from standard-mode scores only");
    const auto table = build_field_year_stats<Rational>(c.pubs);
    const auto scores = score_corpus<Rational>(c.pubs, table);
    auto breakdown = fcb_breakdown<Rational>(c.pubs, scores, grouping, levels, indicators, broad ? &*broad : nullptr);
    for (const auto& n : breakdown.notices) err << "notice: " << n << '\n';
    if (breakdown.reports.empty())
        throw UndefinedBonusError("full counting bonus is undefined: no publication can be assigned at the requested levels");

    Table t{{"scope", "level", "indicator", "fcb", "fcb_percent", "n_included", "n_excluded"}, {}};
    for (const auto& r : breakdown.reports) {
        std::optional<Rational> pct;
        if (r.fcb_percent) pct = *r.fcb_percent * 100;
        t.rows.push_back({r.scope, std::string(to_string(r.level)), std::string(to_string(r.indicator)), r.fcb,
                          number_cell(pct), static_cast<long long>(r.n_included),
                          static_cast<long long>(r.n_excluded)});
    }
    std::vector<std::string> ind;
    for (auto i : indicators) ind.emplace_back(to_string(i));
    c.provenance.options = {{"level", level_list(levels)},
                            {"indicator", join(ind)},
                            {"group_by", o.group_by},
                            {"precision", o.exact ? "exact" : std::to_string(o.precision)}};
    if (broad) c.provenance.options.emplace_back("broad_field_map", std::filesystem::path(o.broad_field_map).filename().string());
    emit(o, out, t, c.provenance);
    return kSuccess;
}

int cmd_profile(const Options& o, std::ostream& out, std::ostream& err) {
    Corpus c = open_corpus(o);
    const auto levels = levels_or(o, {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country});
    if (o.mode != "standard") throw ConfigFailure("profile is computed from standard-mode scores only");
    const auto table = build_field_year_stats<Rational>(c.pubs);
    const auto scores = score_corpus<Rational>(c.pubs, table);
    Table t{{"level", "units", "publications", "share", "mean_ncs", "mean_pp_top10"}, {}};
    for (UnitLevel level : levels) {
        auto p = profile<Rational>(c.pubs, scores, level);
        if (p.excluded)
            err << "notice: " << p.excluded << " publications without units excluded at " << to_string(level)
                << " level\n";
        for (const auto& b : p.buckets)
            t.rows.push_back({std::string(to_string(level)), static_cast<long long>(b.units),
                              static_cast<long long>(b.publications), b.share, b.mean_ncs, b.mean_top10});
    }
    c.provenance.options = {{"level", level_list(levels)},
                            {"precision", o.exact ? "exact" : std::to_string(o.precision)}};
    emit(o, out, t, c.provenance);
    return kSuccess;
}

int cmd_stats(const Options& o, std::ostream& out) {
    Corpus c = open_corpus(o);
    const UnitLevel level = single_level(o);
    const auto table = stats_for(o, c.pubs, level);
    Table t{{"field", "year", "pub_count", "mean_citations", "top10_threshold", "top10_tie_fraction"}, {}};
    for (const auto& [key, s] : table.cells)
        t.rows.push_back({s.field, static_cast<long long>(s.year), s.pub_count, s.mean_citations,
                          static_cast<long long>(s.top10_threshold), s.top10_tie_fraction});
    c.provenance.options = {{"mode", o.mode},
                            {"precision", o.exact ? "exact" : std::to_string(o.precision)}};
    if (o.mode == "multiplicative") c.provenance.options.emplace_back("level", std::string(to_string(level)));
    emit(o, out, t, c.provenance);
    return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.config.empty()) throw ConfigFailure("simulate requires --config");
    SimulationConfig config = load_simulation_config(o.config);
    auto corpus = simulate_corpus(config, o.seed);
    err << "# bibcount " << kToolVersion << " simulate seed=" << o.seed
        << " config_sha256=" << sha256_file(o.config) << " records=" << corpus.size() << '\n';
    if (o.out.empty()) {
        write_corpus(out, corpus);
        return kSuccess;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw ConfigFailure("cannot write output file " + o.out);
    write_corpus(file, corpus);
    return kSuccess;
}

void error_record(std::ostream& err, const char* kind, int code, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["exit_code"] = code;
    j["message"] = message;
    err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Counting-method weights, field-normalized indicators and the full counting bonus", "bibcount"};
    app.require_subcommand(1);

    const std::vector<std::string> level_names{"author", "organization", "country"};
    std::vector<std::string> method_names;
    for (auto m : kAllMethods) method_names.emplace_back(to_string(m));

    auto add_corpus = [&](CLI::App* sub) {
        sub->add_option("--corpus", o.corpus, "Corpus file (one JSON record per line)");
        sub->add_option("--doc-type", o.doc_types, "Document types to keep (default: article, review)")
            ->check(CLI::IsMember({"article", "review", "other"}));
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Output file (default: stdout)");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--precision", o.precision, "Decimal places for numbers")->check(CLI::Range(0, 30));
        sub->add_flag("--exact", o.exact, "Emit exact fractions");
    };
    auto add_levels = [&](CLI::App* sub) {
        sub->add_option("--level", o.levels, "author, organization or country")->check(CLI::IsMember(level_names));
    };
    auto add_methods = [&](CLI::App* sub) {
        sub->add_option("--method", o.methods, "Counting method (repeatable)")->check(CLI::IsMember(method_names));
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", o.mode, "standard or multiplicative")
            ->check(CLI::IsMember({"standard", "multiplicative"}));
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check a corpus file against the record schema");
    add_corpus(validate_cmd);
    validate_cmd->add_option("--out", o.out, "Output file (default: stdout)");

    auto* weights_cmd = app.add_subcommand("weights", "Per-publication unit weights");
    add_corpus(weights_cmd);
    add_levels(weights_cmd);
    add_methods(weights_cmd);
    add_output(weights_cmd);

    auto* indicators_cmd = app.add_subcommand("indicators", "Per-unit P, MNCS and PP_top10% with world averages");
    add_corpus(indicators_cmd);
    add_levels(indicators_cmd);
    add_methods(indicators_cmd);
    add_mode(indicators_cmd);
    indicators_cmd->add_option("--top-n", o.top_n, "Keep the n units with the largest full-counting P");
    add_output(indicators_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "Compare counting methods against a baseline");
    add_corpus(compare_cmd);
    add_levels(compare_cmd);
    add_methods(compare_cmd);
    add_mode(compare_cmd);
    compare_cmd->add_option("--baseline", o.baseline, "Baseline counting method")->check(CLI::IsMember(method_names));
    compare_cmd->add_option("--top-n", o.top_n, "Keep the n units with the largest full-counting P");
    add_output(compare_cmd);

    auto* bonus_cmd = app.add_subcommand("bonus", "Full counting bonus per group, level and indicator");
    add_corpus(bonus_cmd);
    add_levels(bonus_cmd);
    add_mode(bonus_cmd);
    bonus_cmd->add_option("--indicator", o.indicators, "mncs or pptop10 (repeatable)")
        ->check(CLI::IsMember({"mncs", "pptop10"}));
    bonus_cmd->add_option("--group-by", o.group_by, "all, field, year or broad-field")
        ->check(CLI::IsMember({"all", "field", "year", "broad-field"}));
    bonus_cmd->add_option("--broad-field-map", o.broad_field_map, "JSON object mapping field ids to broad fields");
    add_output(bonus_cmd);

    auto* profile_cmd = app.add_subcommand("profile", "Publication share and mean scores by unit count");
    add_corpus(profile_cmd);
    add_levels(profile_cmd);
    add_mode(profile_cmd);
    add_output(profile_cmd);

    auto* stats_cmd = app.add_subcommand("stats", "Field-year reference values");
    add_corpus(stats_cmd);
    add_levels(stats_cmd);
    add_mode(stats_cmd);
    add_output(stats_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic corpus");
    simulate_cmd->add_option("--config", o.config, "Generator config (JSON)");
    simulate_cmd->add_option("--seed", o.seed, "Random seed");
    simulate_cmd->add_option("--out", o.out, "Output corpus file (default: stdout)");

    std::vector<const char*> argv{"bibcount"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        error_record(err, "config", kConfigError, e.what());
        return kConfigError;
    }

    o.command = app.get_subcommands().front()->get_name();
    try {
        if (o.command == "validate") return cmd_validate(o, out);
        if (o.command == "weights") return cmd_weights(o, out);
        if (o.command == "indicators") return cmd_indicators(o, out);
        if (o.command == "compare") return cmd_compare(o, out);
        if (o.command == "bonus") return cmd_bonus(o, out, err);
        if (o.command == "profile") return cmd_profile(o, out, err);
        if (o.command == "stats") return cmd_stats(o, out);
        if (o.command == "simulate") return cmd_simulate(o, out, err);
    } catch (const ConfigFailure& e) {
        error_record(err, "config", kConfigError, e.what());
        return kConfigError;
    } catch (const ConfigError& e) {
        error_record(err, "config", kConfigError, e.what());
        return kConfigError;
    } catch (const UsageError& e) {
        error_record(err, "config", kConfigError, e.what());
        return kConfigError;
    } catch (const CorpusError& e) {
        error_record(err, "corpus", kCorpusError, e.what());
        return kCorpusError;
    } catch (const std::invalid_argument& e) {
        error_record(err, "config", kConfigError, e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        error_record(err, "computation", kComputationError, e.what());
        return kComputationError;
    }
    error_record(err, "config", kConfigError, "unknown command " + o.command);
    return kConfigError;
}

}  // namespace bibcount::cli
