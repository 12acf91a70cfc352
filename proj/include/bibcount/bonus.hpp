#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/counting.hpp"
#include "bibcount/indicators.hpp"
#include "bibcount/normalization.hpp"
#include "bibcount/rational.hpp"

namespace bibcount {

/// One publication as seen by the bonus: unit count m, citation score c and
/// a membership weight (1 except for partial field membership).
template <Scalar T>
struct BonusEntry {
    std::string id;
    std::size_t m = 1;
    T c = 0;
    T weight = 1;
};

template <Scalar T>
struct BonusInput {
    std::vector<BonusEntry<T>> publications;  // m >= 1 for all
    std::size_t excluded_count = 0;           // publications with no units
};

class UndefinedBonusError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// The two averages whose difference is the full counting bonus:
///   full       = Σ w·m·c / Σ w·m
///   fractional = Σ w·c / Σ w
template <Scalar T>
struct BonusTerms {
    T full = 0;
    T fractional = 0;

    T bonus() const { return full - fractional; }
};

/// Throws UndefinedBonusError when no publication is included.
template <Scalar T>
BonusTerms<T> bonus_terms(const BonusInput<T>& input);

template <Scalar T>
T fcb_direct(const BonusInput<T>& input) {
    return bonus_terms(input).bonus();
}

/// Unit counts from `level`, scores from `indicator`. Publications without
/// units are counted in excluded_count.
template <Scalar T>
BonusInput<T> bonus_input(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores,
                          UnitLevel level, Indicator indicator);

/// World average under full counting minus world average under `reference`,
/// which must give every publication a total weight of one.
template <Scalar T>
T fcb_via_unit_averages(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores,
                        UnitLevel level, Indicator indicator,
                        CountingMethod reference = CountingMethod::FracAuthor);

enum class Grouping { All, Field, BroadField, Year };

std::string_view to_string(Grouping grouping);
std::optional<Grouping> parse_grouping(std::string_view text);

/// field id -> broad field name.
using BroadFieldMap = std::map<std::string, std::string>;

/// Reads a JSON object mapping field ids to broad field names.
BroadFieldMap load_broad_field_map(const std::filesystem::path& path);

template <Scalar T>
struct BonusReport {
    std::string scope;
    UnitLevel level = UnitLevel::Author;
    Indicator indicator = Indicator::Mncs;
    T fcb = 0;
    /// fcb relative to the fractional-counting average; absent when that
    /// average is zero.
    std::optional<T> fcb_percent;
    T average = 0;
    std::size_t n_included = 0;
    std::size_t n_excluded = 0;
};

template <Scalar T>
struct BonusBreakdown {
    std::vector<BonusReport<T>> reports;
    std::vector<std::string> notices;
};

/// One report per (group, level, indicator). Field groups use each
/// publication's per-field score weighted by its field fraction; broad-field
/// groups pool the fields mapped to them. Groups in which no publication can
/// be assigned are skipped with a notice. Throws std::invalid_argument when a
/// broad-field grouping lacks a map or the map misses a field.
template <Scalar T>
BonusBreakdown<T> fcb_breakdown(std::span<const ResolvedPublication> corpus,
                                std::span<const NormalizedScores<T>> scores, Grouping grouping,
                                std::span<const UnitLevel> levels, std::span<const Indicator> indicators,
                                const BroadFieldMap* broad_fields = nullptr);

}  // namespace bibcount
