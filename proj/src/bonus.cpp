#include "bibcount/bonus.hpp"

#include <fstream>

#include <json.hpp>

namespace bibcount {

template <Scalar T>
BonusTerms<T> bonus_terms(const BonusInput<T>& input) {
    T wmc = 0, wm = 0, wc = 0, w = 0;
    for (const auto& p : input.publications) {
        const T m = T(static_cast<long>(p.m));
        wmc += p.weight * m * p.c;
        wm += p.weight * m;
        wc += p.weight * p.c;
        w += p.weight;
    }
    if (input.publications.empty() || w == 0 || wm == 0)
        throw UndefinedBonusError("full counting bonus is undefined: no publication can be assigned to a unit");
    return {T(wmc / wm), T(wc / w)};
}

template <Scalar T>
BonusInput<T> bonus_input(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores,
                          UnitLevel level, Indicator indicator) {
    if (corpus.size() != scores.size()) throw std::invalid_argument("scores must be aligned with the corpus");
    BonusInput<T> input;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::size_t m = unit_count(corpus[i], level);
        if (m == 0) {
            ++input.excluded_count;
            continue;
        }
        input.publications.push_back({corpus[i].id(), m, indicator_value(scores[i], indicator), T(1)});
    }
    return input;
}

template <Scalar T>
T fcb_via_unit_averages(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores,
                        UnitLevel level, Indicator indicator, CountingMethod reference) {
    if (!sums_to_one(reference))
        throw UsageError("the reference counting method must assign each publication a total weight of one");
    auto full = unit_indicators(corpus, scores, level, CountingMethod::Full);
    auto frac = unit_indicators(corpus, scores, level, reference);
    if (full.empty() || frac.empty())
        throw UndefinedBonusError("full counting bonus is undefined: no publication can be assigned to a unit");
    return world_average<T>(full, indicator).value - world_average<T>(frac, indicator).value;
}

std::string_view to_string(Grouping grouping) {
    switch (grouping) {
        case Grouping::All: return "all";
        case Grouping::Field: return "field";
        case Grouping::BroadField: return "broad-field";
        case Grouping::Year: return "year";
    }
    return "all";
}

std::optional<Grouping> parse_grouping(std::string_view text) {
    for (Grouping g : {Grouping::All, Grouping::Field, Grouping::BroadField, Grouping::Year})
        if (to_string(g) == text) return g;
    return std::nullopt;
}

BroadFieldMap load_broad_field_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open broad field map " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed broad field map " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("broad field map must be a JSON object");
    BroadFieldMap map;
    for (const auto& [field, broad] : j.items()) {
        if (!broad.is_string()) throw std::invalid_argument("broad field of '" + field + "' must be a string");
        map[field] = broad.get<std::string>();
    }
    return map;
}

namespace {

/// Publication membership in a group: weight and the scores to use there.
template <Scalar T>
struct Member {
    std::size_t index;
    T weight;
    T ncs;
    T top10;
};

/// Group key ordering: years numerically, names lexicographically.
using GroupKey = std::pair<int, std::string>;

template <Scalar T>
std::map<GroupKey, std::vector<Member<T>>> assign_groups(std::span<const ResolvedPublication> corpus,
                                                         std::span<const NormalizedScores<T>> scores,
                                                         Grouping grouping, const BroadFieldMap* broad_fields) {
    std::map<GroupKey, std::vector<Member<T>>> groups;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& s = scores[i];
        switch (grouping) {
            case Grouping::All:
                groups[{0, "all"}].push_back({i, T(1), s.ncs, s.top10_score});
                break;
            case Grouping::Year:
                groups[{corpus[i].record.year, std::to_string(corpus[i].record.year)}].push_back(
                    {i, T(1), s.ncs, s.top10_score});
                break;
            case Grouping::Field:
                for (const auto& fs : s.per_field) groups[{0, fs.field}].push_back({i, fs.fraction, fs.ncs, fs.top10});
                break;
            case Grouping::BroadField: {
                std::map<std::string, Member<T>> pooled;
                for (const auto& fs : s.per_field) {
                    auto it = broad_fields->find(fs.field);
                    if (it == broad_fields->end())
                        throw std::invalid_argument("broad field map has no entry for field '" + fs.field + "'");
                    auto [slot, _] = pooled.try_emplace(it->second, Member<T>{i, T(0), T(0), T(0)});
                    slot->second.weight += fs.fraction;
                    slot->second.ncs += fs.fraction * fs.ncs;
                    slot->second.top10 += fs.fraction * fs.top10;
                }
                for (auto& [broad, m] : pooled) {
                    m.ncs /= m.weight;
                    m.top10 /= m.weight;
                    groups[{0, broad}].push_back(m);
                }
                break;
            }
        }
    }
    return groups;
}

}  // namespace

template <Scalar T>
BonusBreakdown<T> fcb_breakdown(std::span<const ResolvedPublication> corpus,
                                std::span<const NormalizedScores<T>> scores, Grouping grouping,
                                std::span<const UnitLevel> levels, std::span<const Indicator> indicators,
                                const BroadFieldMap* broad_fields) {
    if (corpus.size() != scores.size()) throw std::invalid_argument("scores must be aligned with the corpus");
    if (grouping == Grouping::BroadField && broad_fields == nullptr)
        throw std::invalid_argument("broad-field grouping requires a broad field map");

    BonusBreakdown<T> out;
    for (const auto& [key, members] : assign_groups(corpus, scores, grouping, broad_fields)) {
        for (UnitLevel level : levels) {
            BonusInput<T> base;
            for (const auto& mem : members) {
                std::size_t m = unit_count(corpus[mem.index], level);
                if (m == 0) {
                    ++base.excluded_count;
                    continue;
                }
                base.publications.push_back({corpus[mem.index].id(), m, T(0), mem.weight});
            }
            if (base.publications.empty()) {
                out.notices.push_back("group '" + key.second + "' skipped at " + std::string(to_string(level)) +
                                      " level: no publication can be assigned");
                continue;
            }
            for (Indicator indicator : indicators) {
                BonusInput<T> input = base;
                std::size_t k = 0;
                for (const auto& mem : members) {
                    if (unit_count(corpus[mem.index], level) == 0) continue;
                    input.publications[k++].c = indicator == Indicator::Mncs ? mem.ncs : mem.top10;
                }
                BonusTerms<T> terms = bonus_terms(input);
                BonusReport<T> report;
                report.scope = key.second;
                report.level = level;
                report.indicator = indicator;
                report.fcb = terms.bonus();
                report.average = terms.fractional;
                if (terms.fractional != 0) report.fcb_percent = T(report.fcb / terms.fractional);
                report.n_included = input.publications.size();
                report.n_excluded = input.excluded_count;
                out.reports.push_back(std::move(report));
            }
        }
    }
    return out;
}

#define BIBCOUNT_INSTANTIATE(T)                                                                                   \
    template BonusTerms<T> bonus_terms<T>(const BonusInput<T>&);                                                  \
    template BonusInput<T> bonus_input<T>(std::span<const ResolvedPublication>,                                   \
                                          std::span<const NormalizedScores<T>>, UnitLevel, Indicator);            \
    template T fcb_via_unit_averages<T>(std::span<const ResolvedPublication>, std::span<const NormalizedScores<T>>, \
                                        UnitLevel, Indicator, CountingMethod);                                    \
    template BonusBreakdown<T> fcb_breakdown<T>(std::span<const ResolvedPublication>,                             \
                                                std::span<const NormalizedScores<T>>, Grouping,                   \
                                                std::span<const UnitLevel>, std::span<const Indicator>,           \
                                                const BroadFieldMap*);

BIBCOUNT_INSTANTIATE(Rational)
BIBCOUNT_INSTANTIATE(double)

#undef BIBCOUNT_INSTANTIATE

}  // namespace bibcount
