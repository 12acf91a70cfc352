#include "bibcount/normalization.hpp"

#include <functional>

namespace bibcount {

std::string_view to_string(NormalizationMode mode) {
    return mode == NormalizationMode::Standard ? "standard" : "multiplicative";
}

std::optional<NormalizationMode> parse_normalization_mode(std::string_view text) {
    if (text == "standard") return NormalizationMode::Standard;
    if (text == "multiplicative") return NormalizationMode::Multiplicative;
    return std::nullopt;
}

template <Scalar T>
T FieldYearStats<T>::top10_membership(std::int64_t citations) const {
    if (citations > top10_threshold) return T(1);
    if (citations == top10_threshold) return top10_tie_fraction;
    return T(0);
}

template <Scalar T>
T FieldYearStats<T>::citation_ratio(std::int64_t citations) const {
    if (mean_citations == 0) return T(1);
    return T(static_cast<long>(citations)) / mean_citations;
}

template <Scalar T>
const FieldYearStats<T>& FieldYearTable<T>::at(const std::string& field, int year) const {
    auto it = cells.find({field, year});
    if (it == cells.end())
        throw StatsCoverageError("no reference statistics for field '" + field + "' in " + std::to_string(year));
    return it->second;
}

template <Scalar T>
T publication_mass(const ResolvedPublication& pub, NormalizationMode mode, std::optional<UnitLevel> level) {
    const long k = static_cast<long>(pub.record.field_assignments.size());
    long m = 1;
    if (mode == NormalizationMode::Multiplicative) m = static_cast<long>(unit_count(pub, *level));
    return from_ratio<T>(m, k);
}

namespace {

template <Scalar T>
void set_threshold(FieldYearStats<T>& s, const std::map<std::int64_t, T, std::greater<>>& mass_by_citations) {
    const T target = s.pub_count / T(10);
    T above = 0;
    bool found = false;
    for (const auto& [citations, at] : mass_by_citations) {
        // Smallest value with mass(> v) <= 10% and mass(>= v) >= 10%.
        if (above <= target && above + at >= target) {
            s.top10_threshold = citations;
            s.mass_above = above;
            s.mass_at = at;
            found = true;
        }
        above += at;
        if (above > target) break;
    }
    if (!found || s.mass_at == 0) {
        s.top10_tie_fraction = 0;
        return;
    }
    s.top10_tie_fraction = (target - s.mass_above) / s.mass_at;
}

}  // namespace

template <Scalar T>
FieldYearTable<T> build_field_year_stats(std::span<const ResolvedPublication> corpus, NormalizationMode mode,
                                         std::optional<UnitLevel> multiplicative_level) {
    if (mode == NormalizationMode::Multiplicative && !multiplicative_level)
        throw std::invalid_argument("multiplicative normalization requires a unit level");

    FieldYearTable<T> table;
    table.mode = mode;
    table.multiplicative_level = mode == NormalizationMode::Multiplicative ? multiplicative_level : std::nullopt;

    std::map<FieldYear, std::map<std::int64_t, T, std::greater<>>> distributions;
    for (const auto& pub : corpus) {
        const T mass = publication_mass<T>(pub, mode, table.multiplicative_level);
        if (mass == 0) continue;
        for (const auto& field : pub.record.field_assignments) {
            FieldYear key{field, pub.record.year};
            auto& cell = table.cells[key];
            cell.field = field;
            cell.year = pub.record.year;
            cell.pub_count += mass;
            cell.citation_mass += mass * T(static_cast<long>(pub.record.citations));
            distributions[key][pub.record.citations] += mass;
        }
    }
    for (auto& [key, cell] : table.cells) {
        cell.mean_citations = cell.citation_mass / cell.pub_count;
        set_threshold(cell, distributions[key]);
    }
    return table;
}

template <Scalar T>
NormalizedScores<T> score_publication(const ResolvedPublication& pub, const FieldYearTable<T>& table) {
    NormalizedScores<T> out;
    out.publication_id = pub.id();
    const auto& fields = pub.record.field_assignments;
    const T fraction = from_ratio<T>(1, static_cast<long>(fields.size()));
    for (const auto& field : fields) {
        const auto& cell = table.at(field, pub.record.year);
        FieldScore<T> fs{field, fraction, cell.citation_ratio(pub.record.citations),
                         cell.top10_membership(pub.record.citations)};
        out.ncs += fraction * fs.ncs;
        out.top10_score += fraction * fs.top10;
        out.per_field.push_back(std::move(fs));
    }
    return out;
}

template <Scalar T>
T normalized_citation_score(const ResolvedPublication& pub, const FieldYearTable<T>& table) {
    return score_publication(pub, table).ncs;
}

template <Scalar T>
T top10_score(const ResolvedPublication& pub, const FieldYearTable<T>& table) {
    return score_publication(pub, table).top10_score;
}

template <Scalar T>
std::vector<NormalizedScores<T>> score_corpus(std::span<const ResolvedPublication> corpus,
                                              const FieldYearTable<T>& table) {
    std::vector<NormalizedScores<T>> out;
    out.reserve(corpus.size());
    for (const auto& pub : corpus) {
        bool massless = table.mode == NormalizationMode::Multiplicative &&
                        unit_count(pub, *table.multiplicative_level) == 0;
        if (massless) {
            bool covered = true;
            for (const auto& f : pub.record.field_assignments) covered = covered && table.covers(f, pub.record.year);
            if (!covered) {
                NormalizedScores<T> zero;
                zero.publication_id = pub.id();
                out.push_back(std::move(zero));
                continue;
            }
        }
        out.push_back(score_publication(pub, table));
    }
    return out;
}

#define BIBCOUNT_INSTANTIATE(T)                                                                                \
    template struct FieldYearStats<T>;                                                                         \
    template struct FieldYearTable<T>;                                                                         \
    template T publication_mass<T>(const ResolvedPublication&, NormalizationMode, std::optional<UnitLevel>);   \
    template FieldYearTable<T> build_field_year_stats<T>(std::span<const ResolvedPublication>,                 \
                                                         NormalizationMode, std::optional<UnitLevel>);         \
    template NormalizedScores<T> score_publication<T>(const ResolvedPublication&, const FieldYearTable<T>&);   \
    template T normalized_citation_score<T>(const ResolvedPublication&, const FieldYearTable<T>&);             \
    template T top10_score<T>(const ResolvedPublication&, const FieldYearTable<T>&);                           \
    template std::vector<NormalizedScores<T>> score_corpus<T>(std::span<const ResolvedPublication>,            \
                                                              const FieldYearTable<T>&);

BIBCOUNT_INSTANTIATE(Rational)
BIBCOUNT_INSTANTIATE(double)

#undef BIBCOUNT_INSTANTIATE

}  // namespace bibcount
