#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/counting.hpp"
#include "bibcount/normalization.hpp"
#include "bibcount/rational.hpp"

namespace bibcount {

enum class Indicator { Mncs, PpTop10 };

std::string_view to_string(Indicator indicator);
std::optional<Indicator> parse_indicator(std::string_view text);

template <Scalar T>
T indicator_value(const NormalizedScores<T>& s, Indicator indicator) {
    return indicator == Indicator::Mncs ? s.ncs : s.top10_score;
}

template <Scalar T>
struct UnitIndicatorRow {
    std::string unit;
    UnitLevel level = UnitLevel::Author;
    CountingMethod method = CountingMethod::Full;
    T p = 0;
    T mncs = 0;
    T pp_top10 = 0;

    T value(Indicator indicator) const { return indicator == Indicator::Mncs ? mncs : pp_top10; }
};

/// Per-unit weighted publication count, MNCS and PP_top10%. `scores` is
/// aligned with `corpus`. Units with zero total weight are omitted; rows are
/// sorted by p descending, then unit.
template <Scalar T>
std::vector<UnitIndicatorRow<T>> unit_indicators(std::span<const ResolvedPublication> corpus,
                                                 std::span<const NormalizedScores<T>> scores, UnitLevel level,
                                                 CountingMethod method);

class UndefinedAverageError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

template <Scalar T>
struct WorldAverage {
    UnitLevel level = UnitLevel::Author;
    CountingMethod method = CountingMethod::Full;
    Indicator indicator = Indicator::Mncs;
    T value = 0;
};

/// Σ p·indicator / Σ p. Throws UndefinedAverageError when Σ p = 0.
template <Scalar T>
WorldAverage<T> world_average(std::span<const UnitIndicatorRow<T>> rows, Indicator indicator);

template <Scalar T>
struct ComparisonEntry {
    CountingMethod method = CountingMethod::Full;
    T p = 0;
    /// Absent when the unit has no weight under this method.
    std::optional<T> mncs;
    std::optional<T> pp_top10;
    /// (p_baseline - p) / p_baseline.
    std::optional<T> p_decrease;
    /// baseline - value.
    std::optional<T> mncs_decrease;
    std::optional<T> pp_top10_decrease;
};

template <Scalar T>
struct ComparisonRow {
    std::string unit;
    std::vector<ComparisonEntry<T>> entries;  // one per method, baseline first
};

template <Scalar T>
struct ComparisonTable {
    UnitLevel level = UnitLevel::Author;
    CountingMethod baseline = CountingMethod::Full;
    std::vector<CountingMethod> methods;
    std::vector<ComparisonRow<T>> rows;
};

/// Rows sorted by baseline p descending, then unit. With `top_n`, only the
/// n units with the largest full-counting p are kept. Throws UsageError when
/// fewer than two distinct methods (baseline included) are requested.
template <Scalar T>
ComparisonTable<T> comparison_table(std::span<const ResolvedPublication> corpus,
                                    std::span<const NormalizedScores<T>> scores, UnitLevel level,
                                    std::span<const CountingMethod> methods, CountingMethod baseline,
                                    std::optional<std::size_t> top_n = std::nullopt);

template <Scalar T>
struct ProfileBucket {
    std::size_t units = 0;
    std::size_t publications = 0;
    T share = 0;
    T mean_ncs = 0;
    T mean_top10 = 0;
};

template <Scalar T>
struct Profile {
    UnitLevel level = UnitLevel::Author;
    std::size_t included = 0;
    /// Publications with no units at the level.
    std::size_t excluded = 0;
    std::vector<ProfileBucket<T>> buckets;  // ascending unit count
};

/// Distribution of publications over their unit count and the mean scores
/// per count.
template <Scalar T>
Profile<T> profile(std::span<const ResolvedPublication> corpus, std::span<const NormalizedScores<T>> scores,
                   UnitLevel level);

}  // namespace bibcount
