#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bibcount/corpus.hpp"

namespace bibcount {

class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Overdispersed citation model: the expected count of a publication is
/// base_mean * field multiplier * m^beta, with m its unit count at
/// coupling_level. Counts are gamma-Poisson (negative binomial) with shape
/// `dispersion`; dispersion 0 gives plain Poisson counts.
struct CitationModel {
    double base_mean = 5.0;
    /// Field f (0-based) has multiplier 1 + field_mean_step * f.
    double field_mean_step = 0.5;
    UnitLevel coupling_level = UnitLevel::Country;
    double beta = 0.0;
    double dispersion = 1.0;
};

struct SimulationConfig {
    int fields = 1;
    int first_year = 2010;
    int years = 1;
    int pubs_per_field_year = 100;

    /// Discrete distributions: value -> probability (must sum to 1).
    std::map<int, double> author_count{{1, 1.0}};
    std::map<int, double> addresses_per_author{{1, 1.0}};

    int countries = 10;
    int organizations_per_country = 10;
    int author_pool = 5000;

    /// Probability that a new address is in a country other than the
    /// publication's home country.
    double foreign_address_prob = 0.2;
    /// Probability that a new address names an organization drawn afresh
    /// rather than one already on the publication in that country.
    double new_organization_prob = 0.5;
    /// Probability that an author's address is one already on the publication.
    double address_reuse_prob = 0.3;

    double multi_field_prob = 0.0;
    double reprint_prob = 0.0;
    double missing_links_prob = 0.0;
    double unassignable_prob = 0.0;

    CitationModel citation;
};

/// Throws ConfigError on unknown keys, non-positive counts, probabilities
/// outside [0, 1], or distributions that do not sum to 1.
SimulationConfig parse_simulation_config(const nlohmann::json& j);
SimulationConfig load_simulation_config(const std::filesystem::path& path);
void validate(const SimulationConfig& config);
nlohmann::ordered_json to_json(const SimulationConfig& config);

/// Deterministic for a given (config, seed). Every field-year cell draws from
/// its own generator seeded from (seed, field, year), so cells are
/// independent of generation order.
std::vector<PublicationRecord> simulate_corpus(const SimulationConfig& config, std::uint64_t seed);

}  // namespace bibcount
