#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/rational.hpp"

namespace bibcount {

/// Standard: every publication has mass 1 spread over its fields.
/// Multiplicative: mass is additionally multiplied by the publication's unit
/// count at a chosen level, so a three-country publication counts three times in
/// the field reference values.
enum class NormalizationMode { Standard, Multiplicative };

std::string_view to_string(NormalizationMode mode);
std::optional<NormalizationMode> parse_normalization_mode(std::string_view text);

struct FieldYear {
    std::string field;
    int year = 0;

    friend auto operator<=>(const FieldYear&, const FieldYear&) = default;
};

template <Scalar T>
struct FieldYearStats {
    std::string field;
    int year = 0;
    T pub_count = 0;
    T citation_mass = 0;
    T mean_citations = 0;
    std::int64_t top10_threshold = 0;
    T top10_tie_fraction = 0;
    /// Mass with citations strictly above / exactly at the threshold.
    T mass_above = 0;
    T mass_at = 0;

    /// Top-10% membership of a publication with `citations` in this cell.
    T top10_membership(std::int64_t citations) const;
    /// citations / mean, or 1 when every publication in the cell is uncited.
    T citation_ratio(std::int64_t citations) const;
};

class StatsCoverageError : public std::out_of_range {
   public:
    using std::out_of_range::out_of_range;
};

template <Scalar T>
struct FieldYearTable {
    NormalizationMode mode = NormalizationMode::Standard;
    std::optional<UnitLevel> multiplicative_level;
    std::map<FieldYear, FieldYearStats<T>> cells;

    /// Throws StatsCoverageError when the cell is absent.
    const FieldYearStats<T>& at(const std::string& field, int year) const;
    bool covers(const std::string& field, int year) const { return cells.contains({field, year}); }
};

/// Mass a publication contributes to each of its fields: 1/k in standard
/// mode, m/k in multiplicative mode (m = unit count at the level).
template <Scalar T>
T publication_mass(const ResolvedPublication& pub, NormalizationMode mode, std::optional<UnitLevel> level);

/// Multiplicative mode requires a level (std::invalid_argument otherwise).
template <Scalar T>
FieldYearTable<T> build_field_year_stats(std::span<const ResolvedPublication> corpus,
                                         NormalizationMode mode = NormalizationMode::Standard,
                                         std::optional<UnitLevel> multiplicative_level = std::nullopt);

template <Scalar T>
struct FieldScore {
    std::string field;
    T fraction = 0;
    T ncs = 0;
    T top10 = 0;
};

template <Scalar T>
struct NormalizedScores {
    std::string publication_id;
    T ncs = 0;
    T top10_score = 0;
    std::vector<FieldScore<T>> per_field;
};

/// Average over the publication's k fields (weight 1/k each) of
/// citations / mean_citations(field, year).
template <Scalar T>
T normalized_citation_score(const ResolvedPublication& pub, const FieldYearTable<T>& table);

/// Average over the publication's fields of its top-10% membership, which is
/// fractional for publications exactly at a cell's threshold.
template <Scalar T>
T top10_score(const ResolvedPublication& pub, const FieldYearTable<T>& table);

template <Scalar T>
NormalizedScores<T> score_publication(const ResolvedPublication& pub, const FieldYearTable<T>& table);

/// Scores aligned index-by-index with `corpus`. In multiplicative mode a
/// publication with no units at the level has no mass; if none of its cells
/// exist it is given zero scores rather than an error.
template <Scalar T>
std::vector<NormalizedScores<T>> score_corpus(std::span<const ResolvedPublication> corpus,
                                              const FieldYearTable<T>& table);

}  // namespace bibcount
