#include "bibcount/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

namespace bibcount {

using json = nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "fields",          "first_year",          "years",
    "pubs_per_field_year", "author_count",    "addresses_per_author",
    "countries",       "organizations_per_country", "author_pool",
    "foreign_address_prob", "new_organization_prob", "address_reuse_prob",
    "multi_field_prob", "reprint_prob",       "missing_links_prob",
    "unassignable_prob", "citation"};

const std::set<std::string> kCitationKeys = {"base_mean", "field_mean_step", "coupling_level", "beta", "dispersion"};

template <typename V>
void read(const json& j, const char* key, V& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->get<V>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

std::map<int, double> read_distribution(const json& j, const char* key, std::map<int, double> fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_object()) throw ConfigError(std::string("config key '") + key + "' must be an object of value: probability");
    std::map<int, double> dist;
    for (const auto& [k, v] : it->items()) {
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw ConfigError(std::string("config key '") + key + "' has a non-integer value '" + k + "'");
        }
        if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' needs numeric probabilities");
        dist[value] = v.get<double>();
    }
    return dist;
}

void check_distribution(const std::map<int, double>& dist, const char* name) {
    if (dist.empty()) throw ConfigError(std::string(name) + " distribution is empty");
    double sum = 0;
    for (const auto& [value, p] : dist) {
        if (value < 1) throw ConfigError(std::string(name) + " values must be positive");
        if (p < 0 || !std::isfinite(p)) throw ConfigError(std::string(name) + " probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError(std::string(name) + " probabilities must sum to 1");
}

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + " must be a probability in [0, 1]");
}

void check_positive(int v, const char* name) {
    if (v < 1) throw ConfigError(std::string(name) + " must be positive");
}

}  // namespace

void validate(const SimulationConfig& c) {
    check_positive(c.fields, "fields");
    check_positive(c.years, "years");
    check_positive(c.pubs_per_field_year, "pubs_per_field_year");
    check_positive(c.countries, "countries");
    check_positive(c.organizations_per_country, "organizations_per_country");
    check_positive(c.author_pool, "author_pool");
    check_distribution(c.author_count, "author_count");
    check_distribution(c.addresses_per_author, "addresses_per_author");
    check_probability(c.foreign_address_prob, "foreign_address_prob");
    check_probability(c.new_organization_prob, "new_organization_prob");
    check_probability(c.address_reuse_prob, "address_reuse_prob");
    check_probability(c.multi_field_prob, "multi_field_prob");
    check_probability(c.reprint_prob, "reprint_prob");
    check_probability(c.missing_links_prob, "missing_links_prob");
    check_probability(c.unassignable_prob, "unassignable_prob");
    if (!(c.citation.base_mean > 0)) throw ConfigError("citation.base_mean must be positive");
    if (!(1.0 + c.citation.field_mean_step * (c.fields - 1) > 0))
        throw ConfigError("citation.field_mean_step makes a field mean non-positive");
    if (!std::isfinite(c.citation.beta)) throw ConfigError("citation.beta must be finite");
    if (!(c.citation.dispersion >= 0)) throw ConfigError("citation.dispersion must be non-negative");
}

SimulationConfig parse_simulation_config(const json& j) {
    if (!j.is_object()) throw ConfigError("simulation config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kTopKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");

    SimulationConfig c;
    read(j, "fields", c.fields);
    read(j, "first_year", c.first_year);
    read(j, "years", c.years);
    read(j, "pubs_per_field_year", c.pubs_per_field_year);
    c.author_count = read_distribution(j, "author_count", c.author_count);
    c.addresses_per_author = read_distribution(j, "addresses_per_author", c.addresses_per_author);
    read(j, "countries", c.countries);
    read(j, "organizations_per_country", c.organizations_per_country);
    read(j, "author_pool", c.author_pool);
    read(j, "foreign_address_prob", c.foreign_address_prob);
    read(j, "new_organization_prob", c.new_organization_prob);
    read(j, "address_reuse_prob", c.address_reuse_prob);
    read(j, "multi_field_prob", c.multi_field_prob);
    read(j, "reprint_prob", c.reprint_prob);
    read(j, "missing_links_prob", c.missing_links_prob);
    read(j, "unassignable_prob", c.unassignable_prob);

    if (auto it = j.find("citation"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("config key 'citation' must be an object");
        for (const auto& [key, _] : it->items())
            if (!kCitationKeys.contains(key)) throw ConfigError("unknown config key 'citation." + key + "'");
        read(*it, "base_mean", c.citation.base_mean);
        read(*it, "field_mean_step", c.citation.field_mean_step);
        read(*it, "beta", c.citation.beta);
        read(*it, "dispersion", c.citation.dispersion);
        std::string level = std::string(to_string(c.citation.coupling_level));
        read(*it, "coupling_level", level);
        auto parsed = parse_unit_level(level);
        if (!parsed) throw ConfigError("citation.coupling_level must be author, organization or country");
        c.citation.coupling_level = *parsed;
    }
    validate(c);
    return c;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open simulation config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed simulation config " + path.string() + ": " + e.what());
    }
    return parse_simulation_config(j);
}

nlohmann::ordered_json to_json(const SimulationConfig& c) {
    auto dist = [](const std::map<int, double>& d) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (const auto& [v, p] : d) o[std::to_string(v)] = p;
        return o;
    };
    nlohmann::ordered_json j;
    j["fields"] = c.fields;
    j["first_year"] = c.first_year;
    j["years"] = c.years;
    j["pubs_per_field_year"] = c.pubs_per_field_year;
    j["author_count"] = dist(c.author_count);
    j["addresses_per_author"] = dist(c.addresses_per_author);
    j["countries"] = c.countries;
    j["organizations_per_country"] = c.organizations_per_country;
    j["author_pool"] = c.author_pool;
    j["foreign_address_prob"] = c.foreign_address_prob;
    j["new_organization_prob"] = c.new_organization_prob;
    j["address_reuse_prob"] = c.address_reuse_prob;
    j["multi_field_prob"] = c.multi_field_prob;
    j["reprint_prob"] = c.reprint_prob;
    j["missing_links_prob"] = c.missing_links_prob;
    j["unassignable_prob"] = c.unassignable_prob;
    j["citation"] = {{"base_mean", c.citation.base_mean},
                     {"field_mean_step", c.citation.field_mean_step},
                     {"coupling_level", std::string(to_string(c.citation.coupling_level))},
                     {"beta", c.citation.beta},
                     {"dispersion", c.citation.dispersion}};
    return j;
}

namespace {

class CellGenerator {
   public:
    CellGenerator(const SimulationConfig& config, std::uint64_t seed, int field, int year)
        : config_(config), field_(field), year_(year) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(field), static_cast<std::uint32_t>(year)};
        rng_.seed(seq);
        author_count_ = make_discrete(config.author_count, author_values_);
        addresses_ = make_discrete(config.addresses_per_author, address_values_);
    }

    PublicationRecord next(int index) {
        PublicationRecord r;
        r.id = "sim-" + std::to_string(year_) + "-f" + std::to_string(field_) + "-" + std::to_string(index);
        r.year = year_;
        r.doc_type = DocType::Article;
        r.field_assignments.push_back(field_name(field_));
        if (config_.fields > 1 && chance(config_.multi_field_prob)) {
            int other = uniform(0, config_.fields - 2);
            if (other >= field_) ++other;
            r.field_assignments.push_back(field_name(other));
        }

        const int n_authors = author_values_[author_count_(rng_)];
        for (int a = 0; a < n_authors; ++a) r.authors.push_back("Author " + std::to_string(uniform(1, config_.author_pool)));

        if (!chance(config_.unassignable_prob)) add_addresses(r, n_authors);

        r.citations = draw_citations(r);
        return r;
    }

   private:
    static std::string field_name(int f) { return "F" + std::to_string(f + 1); }

    std::discrete_distribution<std::size_t> make_discrete(const std::map<int, double>& dist, std::vector<int>& values) {
        std::vector<double> weights;
        for (const auto& [v, p] : dist) {
            values.push_back(v);
            weights.push_back(p);
        }
        return std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
    }

    bool chance(double p) {
        if (p <= 0) return false;
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    void add_addresses(PublicationRecord& r, int n_authors) {
        const int home = uniform(0, config_.countries - 1);
        // (country, organization) per address
        std::vector<std::pair<int, int>> addresses;
        std::vector<std::vector<std::size_t>> links(static_cast<std::size_t>(n_authors));

        for (auto& author_links : links) {
            const int k = address_values_[addresses_(rng_)];
            for (int j = 0; j < k; ++j) {
                std::size_t pos;
                if (!addresses.empty() && chance(config_.address_reuse_prob)) {
                    pos = static_cast<std::size_t>(uniform(0, static_cast<int>(addresses.size()) - 1));
                } else {
                    int country = home;
                    if (config_.countries > 1 && chance(config_.foreign_address_prob)) {
                        country = uniform(0, config_.countries - 2);
                        if (country >= home) ++country;
                    }
                    std::vector<int> existing;
                    for (const auto& [c, o] : addresses)
                        if (c == country) existing.push_back(o);
                    int org;
                    if (existing.empty() || chance(config_.new_organization_prob)) {
                        org = uniform(0, config_.organizations_per_country - 1);
                    } else {
                        org = existing[static_cast<std::size_t>(uniform(0, static_cast<int>(existing.size()) - 1))];
                    }
                    addresses.emplace_back(country, org);
                    pos = addresses.size() - 1;
                }
                if (std::find(author_links.begin(), author_links.end(), pos + 1) == author_links.end())
                    author_links.push_back(pos + 1);
            }
        }

        for (const auto& [c, o] : addresses) {
            r.regular_addresses.push_back(
                {"Org " + std::to_string(c + 1) + "-" + std::to_string(o + 1), "Country " + std::to_string(c + 1)});
        }
        if (!chance(config_.missing_links_prob)) r.author_address_links = links;
        if (chance(config_.reprint_prob)) {
            const auto& first = links[static_cast<std::size_t>(uniform(0, n_authors - 1))];
            r.reprint_address = r.regular_addresses[first.front() - 1];
        }
    }

    std::int64_t draw_citations(const PublicationRecord& r) {
        const auto& cm = config_.citation;
        double multiplier = 0;
        for (const auto& f : r.field_assignments) multiplier += 1.0 + cm.field_mean_step * (std::stoi(f.substr(1)) - 1);
        multiplier /= static_cast<double>(r.field_assignments.size());

        std::size_t m = unit_count(resolve(r), cm.coupling_level);
        if (m == 0) m = 1;
        const double mean = cm.base_mean * multiplier * std::pow(static_cast<double>(m), cm.beta);
        double lambda = mean;
        if (cm.dispersion > 0) lambda = std::gamma_distribution<double>(cm.dispersion, mean / cm.dispersion)(rng_);
        if (lambda <= 0) return 0;
        return std::poisson_distribution<std::int64_t>(lambda)(rng_);
    }

    const SimulationConfig& config_;
    int field_;
    int year_;
    std::mt19937_64 rng_;
    std::vector<int> author_values_;
    std::vector<int> address_values_;
    std::discrete_distribution<std::size_t> author_count_;
    std::discrete_distribution<std::size_t> addresses_;
};

}  // namespace

std::vector<PublicationRecord> simulate_corpus(const SimulationConfig& config, std::uint64_t seed) {
    validate(config);
    std::vector<PublicationRecord> corpus;
    corpus.reserve(static_cast<std::size_t>(config.fields) * static_cast<std::size_t>(config.years) *
                   static_cast<std::size_t>(config.pubs_per_field_year));
    for (int y = 0; y < config.years; ++y) {
        const int year = config.first_year + y;
        for (int f = 0; f < config.fields; ++f) {
            CellGenerator gen(config, seed, f, year);
            for (int i = 0; i < config.pubs_per_field_year; ++i) corpus.push_back(gen.next(i + 1));
        }
    }
    return corpus;
}

}  // namespace bibcount
