#include "bibcount/indicators.hpp"

#include <algorithm>
#include <map>

namespace bibcount {

std::string_view to_string(Indicator indicator) {
    return indicator == Indicator::Mncs ? "mncs" : "pptop10";
}

std::optional<Indicator> parse_indicator(std::string_view text) {
    if (text == "mncs") return Indicator::Mncs;
    if (text == "pptop10") return Indicator::PpTop10;
    return std::nullopt;
}

namespace {

template <Scalar T>
void check_alignment(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores) {
    if (corpus.size() != scores.size())
        throw std::invalid_argument("scores must be aligned with the corpus (" + std::to_string(scores.size()) +
                                    " scores for " + std::to_string(corpus.size()) + " publications)");
}

template <Scalar T>
struct Sums {
    T p = 0;
    T ncs = 0;
    T top10 = 0;
};

}  // namespace

template <Scalar T>
std::vector<UnitIndicatorRow<T>> unit_indicators(std::span<const ResolvedPublication> corpus,
                                                 std::span<const NormalizedScores<T>> scores, UnitLevel level,
                                                 CountingMethod method) {
    check_alignment(corpus, scores);
    std::map<std::string, Sums<T>> sums;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        WeightVector wv = compute_weights(corpus[i], level, method);
        for (const auto& uw : wv.weights) {
            if (sgn(uw.weight) == 0) continue;
            const T w = from_rational<T>(uw.weight);
            auto& s = sums[uw.unit];
            s.p += w;
            s.ncs += w * scores[i].ncs;
            s.top10 += w * scores[i].top10_score;
        }
    }
    std::vector<UnitIndicatorRow<T>> rows;
    rows.reserve(sums.size());
    for (auto& [unit, s] : sums) {
        rows.push_back({unit, level, method, s.p, T(s.ncs / s.p), T(s.top10 / s.p)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.p > b.p; });
    return rows;
}

template <Scalar T>
WorldAverage<T> world_average(std::span<const UnitIndicatorRow<T>> rows, Indicator indicator) {
    T total = 0;
    T weighted = 0;
    for (const auto& r : rows) {
        total += r.p;
        weighted += r.p * r.value(indicator);
    }
    if (rows.empty() || total == 0) throw UndefinedAverageError("world average is undefined: total weight is zero");
    return {rows.front().level, rows.front().method, indicator, T(weighted / total)};
}

template <Scalar T>
ComparisonTable<T> comparison_table(std::span<const ResolvedPublication> corpus,
                                    std::span<const NormalizedScores<T>> scores, UnitLevel level,
                                    std::span<const CountingMethod> methods, CountingMethod baseline,
                                    std::optional<std::size_t> top_n) {
    ComparisonTable<T> table;
    table.level = level;
    table.baseline = baseline;
    table.methods.push_back(baseline);
    for (CountingMethod m : methods)
        if (std::find(table.methods.begin(), table.methods.end(), m) == table.methods.end())
            table.methods.push_back(m);
    if (table.methods.size() < 2) throw UsageError("a comparison needs at least two distinct counting methods");

    std::vector<std::map<std::string, UnitIndicatorRow<T>>> by_method;
    for (CountingMethod m : table.methods) {
        std::map<std::string, UnitIndicatorRow<T>> rows;
        for (auto& r : unit_indicators(corpus, scores, level, m)) rows.emplace(r.unit, std::move(r));
        by_method.push_back(std::move(rows));
    }

    // Units are those any method credits; full counting credits a superset.
    std::map<std::string, T> full_p;
    for (const auto& r : unit_indicators(corpus, scores, level, CountingMethod::Full)) full_p[r.unit] = r.p;
    std::vector<std::string> units;
    for (const auto& [u, _] : full_p) units.push_back(u);
    if (top_n && *top_n < units.size()) {
        std::stable_sort(units.begin(), units.end(),
                         [&](const auto& a, const auto& b) { return full_p[a] > full_p[b]; });
        units.resize(*top_n);
    }
    const auto& base_rows = by_method.front();
    auto base_p = [&](const std::string& u) {
        auto it = base_rows.find(u);
        return it == base_rows.end() ? T(0) : it->second.p;
    };
    std::sort(units.begin(), units.end(), [&](const auto& a, const auto& b) {
        T pa = base_p(a), pb = base_p(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });

    for (const auto& u : units) {
        ComparisonRow<T> row{u, {}};
        auto base_it = base_rows.find(u);
        for (std::size_t k = 0; k < table.methods.size(); ++k) {
            ComparisonEntry<T> e;
            e.method = table.methods[k];
            auto it = by_method[k].find(u);
            if (it != by_method[k].end()) {
                e.p = it->second.p;
                e.mncs = it->second.mncs;
                e.pp_top10 = it->second.pp_top10;
            }
            if (base_it != base_rows.end()) {
                const auto& b = base_it->second;
                e.p_decrease = T((b.p - e.p) / b.p);
                if (e.mncs) e.mncs_decrease = T(b.mncs - *e.mncs);
                if (e.pp_top10) e.pp_top10_decrease = T(b.pp_top10 - *e.pp_top10);
            }
            row.entries.push_back(std::move(e));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

template <Scalar T>
Profile<T> profile(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores,
                   UnitLevel level) {
    check_alignment(corpus, scores);
    Profile<T> out;
    out.level = level;
    std::map<std::size_t, Sums<T>> sums;
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::size_t m = unit_count(corpus[i], level);
        if (m == 0) {
            ++out.excluded;
            continue;
        }
        ++out.included;
        ++counts[m];
        sums[m].ncs += scores[i].ncs;
        sums[m].top10 += scores[i].top10_score;
    }
    for (const auto& [m, n] : counts) {
        const T count = T(static_cast<long>(n));
        out.buckets.push_back({m, n, T(count / T(static_cast<long>(out.included))), T(sums[m].ncs / count),
                               T(sums[m].top10 / count)});
    }
    return out;
}

#define BIBCOUNT_INSTANTIATE(T)                                                                                    \
    template std::vector<UnitIndicatorRow<T>> unit_indicators<T>(std::span<const ResolvedPublication>,             \
                                                                 std::span<const NormalizedScores<T>>, UnitLevel,  \
                                                                 CountingMethod);                                  \
    template WorldAverage<T> world_average<T>(std::span<const UnitIndicatorRow<T>>, Indicator);                    \
    template ComparisonTable<T> comparison_table<T>(std::span<const ResolvedPublication>,                           \
                                                    std::span<const NormalizedScores<T>>, UnitLevel,               \
                                                    std::span<const CountingMethod>, CountingMethod,               \
                                                    std::optional<std::size_t>);                                   \
    template Profile<T> profile<T>(std::span<const ResolvedPublication>, std::span<const NormalizedScores<T>>,     \
                                   UnitLevel);

BIBCOUNT_INSTANTIATE(Rational)
BIBCOUNT_INSTANTIATE(double)

#undef BIBCOUNT_INSTANTIATE

}  // namespace bibcount
