#pragma once

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

enum class CountingMethod {
    Full,
    FracAuthor,
    FracAddress,
    FracOrg,
    FracCountry,
    FirstAuthor,
    CorrespondingAuthor,
};

inline constexpr CountingMethod kAllMethods[] = {
    CountingMethod::Full,        CountingMethod::FracAuthor,  CountingMethod::FracAddress,
    CountingMethod::FracOrg,     CountingMethod::FracCountry, CountingMethod::FirstAuthor,
    CountingMethod::CorrespondingAuthor,
};

std::string_view to_string(CountingMethod method);
std::optional<CountingMethod> parse_counting_method(std::string_view text);

/// FracOrg needs organization or country level, FracCountry needs country level.
bool method_valid_at(CountingMethod method, UnitLevel level);

/// Methods usable at a level, in declaration order.
std::vector<CountingMethod> methods_at(UnitLevel level);

/// Methods whose weights sum to one per publication.
inline bool sums_to_one(CountingMethod method) { return method != CountingMethod::Full; }

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct UnitWeight {
    std::string unit;
    Rational weight;
};

struct WeightVector {
    std::string publication_id;
    UnitLevel level = UnitLevel::Author;
    CountingMethod method = CountingMethod::Full;
    /// False when the publication cannot be assigned at this level (no
    /// addresses); `weights` is then empty. An assignable publication always
    /// lists every unit from enumerate_units, zero weights included.
    bool assignable = true;
    std::vector<UnitWeight> weights;

    Rational total() const;
    /// Weight of a unit, zero if absent.
    Rational weight_of(std::string_view unit) const;
};

/// Throws UsageError when the method is not valid at the level.
WeightVector compute_weights(const ResolvedPublication& pub, UnitLevel level, CountingMethod method);

/// Total weight per unit over all assignable publications.
std::map<std::string, Rational> weighted_publication_count(std::span<const ResolvedPublication> corpus,
                                                           UnitLevel level, CountingMethod method);

}  // namespace bibcount
