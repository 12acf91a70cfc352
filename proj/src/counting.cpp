#include "bibcount/counting.hpp"

#include <algorithm>

namespace bibcount {

std::string_view to_string(CountingMethod method) {
    switch (method) {
        case CountingMethod::Full: return "full";
        case CountingMethod::FracAuthor: return "frac-author";
        case CountingMethod::FracAddress: return "frac-address";
        case CountingMethod::FracOrg: return "frac-org";
        case CountingMethod::FracCountry: return "frac-country";
        case CountingMethod::FirstAuthor: return "first-author";
        case CountingMethod::CorrespondingAuthor: return "corresponding-author";
    }
    return "full";
}

std::optional<CountingMethod> parse_counting_method(std::string_view text) {
    for (CountingMethod m : kAllMethods)
        if (to_string(m) == text) return m;
    return std::nullopt;
}

bool method_valid_at(CountingMethod method, UnitLevel level) {
    switch (method) {
        case CountingMethod::FracOrg: return level != UnitLevel::Author;
        case CountingMethod::FracCountry: return level == UnitLevel::Country;
        default: return true;
    }
}

std::vector<CountingMethod> methods_at(UnitLevel level) {
    std::vector<CountingMethod> out;
    for (CountingMethod m : kAllMethods)
        if (method_valid_at(m, level)) out.push_back(m);
    return out;
}

Rational WeightVector::total() const {
    Rational sum = 0;
    for (const auto& w : weights) sum += w.weight;
    return sum;
}

Rational WeightVector::weight_of(std::string_view unit) const {
    for (const auto& w : weights)
        if (w.unit == unit) return w.weight;
    return 0;
}

namespace {

/// Weights keyed by unit, emitted in enumeration order.
class Accumulator {
   public:
    explicit Accumulator(const std::vector<std::string>& units) : units_(units), weights_(units_.size(), 0) {}

    void add(const std::string& unit, const Rational& w) {
        auto it = std::find(units_.begin(), units_.end(), unit);
        weights_[static_cast<std::size_t>(it - units_.begin())] += w;
    }

    void add_split(const std::vector<std::string>& targets, const Rational& share) {
        if (targets.empty()) return;
        Rational each = share / static_cast<long>(targets.size());
        for (const auto& t : targets) add(t, each);
    }

    std::vector<UnitWeight> take() {
        std::vector<UnitWeight> out;
        out.reserve(units_.size());
        for (std::size_t i = 0; i < units_.size(); ++i) out.push_back({units_[i], weights_[i]});
        return out;
    }

   private:
    const std::vector<std::string>& units_;
    std::vector<Rational> weights_;
};

void push_distinct(std::vector<std::string>& v, std::string s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

std::vector<std::size_t> all_positions(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
}

/// Effective links of an author; an unlinked author falls back to every
/// weight address.
std::vector<std::size_t> links_or_all(const ResolvedPublication& pub, std::size_t author) {
    const auto& links = pub.author_links[author];
    return links.empty() ? all_positions(pub.weight_addresses.size()) : links;
}

std::vector<std::string> distinct_units(const ResolvedPublication& pub, const std::vector<std::size_t>& addresses,
                                        UnitLevel level) {
    std::vector<std::string> out;
    for (std::size_t i : addresses) push_distinct(out, pub.weight_unit(i, level));
    return out;
}

std::vector<UnitWeight> author_level(const ResolvedPublication& pub, CountingMethod method) {
    const auto& ids = pub.author_units;
    const long n_authors = static_cast<long>(ids.size());
    Accumulator acc(ids);
    switch (method) {
        case CountingMethod::Full:
            for (const auto& id : ids) acc.add(id, 1);
            break;
        case CountingMethod::FracAuthor:
            for (const auto& id : ids) acc.add(id, Rational(1, n_authors));
            break;
        case CountingMethod::FirstAuthor:
            acc.add(ids.front(), 1);
            break;
        case CountingMethod::CorrespondingAuthor:
            acc.add(ids[pub.corresponding_author - 1], 1);
            break;
        case CountingMethod::FracAddress: {
            // Each address shares its weight among the authors linked to it;
            // addresses nobody links to are left out of the denominator. With
            // no linked address at all the authors share equally.
            std::vector<std::vector<std::string>> linked(pub.weight_addresses.size());
            for (std::size_t a = 0; a < ids.size(); ++a)
                for (std::size_t d : pub.author_links[a]) linked[d].push_back(ids[a]);
            long used = std::count_if(linked.begin(), linked.end(), [](const auto& l) { return !l.empty(); });
            if (used == 0) {
                for (const auto& id : ids) acc.add(id, Rational(1, n_authors));
                break;
            }
            for (const auto& authors : linked) acc.add_split(authors, Rational(1, used));
            break;
        }
        case CountingMethod::FracOrg:
        case CountingMethod::FracCountry:
            break;
    }
    return acc.take();
}

std::vector<UnitWeight> address_level(const ResolvedPublication& pub, UnitLevel level, CountingMethod method) {
    Accumulator acc(pub.units(level));
    const auto& addresses = pub.weight_addresses;
    switch (method) {
        case CountingMethod::Full:
            for (const auto& u : pub.units(level)) acc.add(u, 1);
            break;
        case CountingMethod::FracAuthor: {
            std::vector<std::size_t> linked;
            for (std::size_t a = 0; a < pub.author_links.size(); ++a)
                if (!pub.author_links[a].empty()) linked.push_back(a);
            if (linked.empty()) {
                // No author-address information survives: every author is
                // affiliated to every address.
                Rational share(1, static_cast<long>(pub.author_links.size()));
                auto units = distinct_units(pub, all_positions(addresses.size()), level);
                for (std::size_t a = 0; a < pub.author_links.size(); ++a) acc.add_split(units, share);
                break;
            }
            Rational share(1, static_cast<long>(linked.size()));
            for (std::size_t a : linked) acc.add_split(distinct_units(pub, pub.author_links[a], level), share);
            break;
        }
        case CountingMethod::FracAddress: {
            Rational share(1, static_cast<long>(addresses.size()));
            for (std::size_t i = 0; i < addresses.size(); ++i) acc.add(pub.weight_unit(i, level), share);
            break;
        }
        case CountingMethod::FracOrg: {
            std::vector<std::string> orgs;
            for (const auto& org : pub.weight_organizations) push_distinct(orgs, org);
            Rational share(1, static_cast<long>(orgs.size()));
            for (const auto& org : orgs) {
                std::vector<std::string> targets;
                for (std::size_t i = 0; i < addresses.size(); ++i)
                    if (pub.weight_organizations[i] == org) push_distinct(targets, pub.weight_unit(i, level));
                acc.add_split(targets, share);
            }
            break;
        }
        case CountingMethod::FracCountry: {
            std::vector<std::string> countries;
            for (const auto& country : pub.weight_countries) push_distinct(countries, country);
            acc.add_split(countries, 1);
            break;
        }
        case CountingMethod::FirstAuthor:
            acc.add_split(distinct_units(pub, links_or_all(pub, 0), level), 1);
            break;
        case CountingMethod::CorrespondingAuthor:
            if (pub.corresponding_by_reprint) {
                acc.add(address_unit(*pub.record.reprint_address, level), 1);
            } else {
                acc.add_split(distinct_units(pub, links_or_all(pub, pub.corresponding_author - 1), level), 1);
            }
            break;
    }
    return acc.take();
}

}  // namespace

WeightVector compute_weights(const ResolvedPublication& pub, UnitLevel level, CountingMethod method) {
    if (!method_valid_at(method, level)) {
        throw UsageError("counting method " + std::string(to_string(method)) + " is not defined at " +
                         std::string(to_string(level)) + " level");
    }
    WeightVector wv;
    wv.publication_id = pub.id();
    wv.level = level;
    wv.method = method;
    if (level == UnitLevel::Author) {
        wv.weights = author_level(pub, method);
    } else if (!pub.assignable) {
        wv.assignable = false;
    } else {
        wv.weights = address_level(pub, level, method);
    }
    return wv;
}

std::map<std::string, Rational> weighted_publication_count(std::span<const ResolvedPublication> corpus,
                                                           UnitLevel level, CountingMethod method) {
    std::map<std::string, Rational> totals;
    for (const auto& pub : corpus) {
        WeightVector wv = compute_weights(pub, level, method);
        for (auto& w : wv.weights) totals[w.unit] += w.weight;
    }
    std::erase_if(totals, [](const auto& kv) { return sgn(kv.second) == 0; });
    return totals;
}

}  // namespace bibcount
