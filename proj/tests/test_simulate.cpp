#include <doctest.h>

#include <set>

#include "bibcount/normalization.hpp"
#include "bibcount/simulate.hpp"
#include "fixtures.hpp"

using namespace bibcount;
using nlohmann::json;

namespace {

SimulationConfig small_config() {
    SimulationConfig c;
    c.fields = 2;
    c.years = 2;
    c.pubs_per_field_year = 50;
    c.author_count = {{1, 0.3}, {3, 0.4}, {6, 0.3}};
    c.addresses_per_author = {{1, 0.7}, {2, 0.3}};
    c.countries = 5;
    c.organizations_per_country = 4;
    c.multi_field_prob = 0.3;
    c.reprint_prob = 0.4;
    c.missing_links_prob = 0.2;
    c.unassignable_prob = 0.1;
    return c;
}

}  // namespace

TEST_CASE("config parsing is strict") {
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"fieldz": 2})")), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"citation": {"alpha": 1}})")), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"fields": "two"})")), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"author_count": {"1": 0.5}})")), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"reprint_prob": 1.5})")), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"fields": 0})")), ConfigError);
    CHECK_THROWS_AS(parse_simulation_config(json::parse(R"({"fields": 3, "citation": {"field_mean_step": -0.6}})")),
                    ConfigError);
    CHECK_NOTHROW(parse_simulation_config(json::parse("{}")));
}

TEST_CASE("bundled configs load and round trip") {
    for (auto name : {"sim/single_unit.json", "sim/independent.json", "sim/increasing.json"}) {
        auto c = load_simulation_config(fixtures::data_path(name));
        auto again = parse_simulation_config(json::parse(to_json(c).dump()));
        CHECK(to_json(again) == to_json(c));
    }
}

TEST_CASE("generated corpora are valid and deterministic") {
    auto c = small_config();
    auto a = simulate_corpus(c, 17);
    auto b = simulate_corpus(c, 17);
    auto other = simulate_corpus(c, 18);
    REQUIRE(a.size() == 200);
    std::set<std::string> ids;
    std::size_t unassignable = 0, multi = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(validate(a[i]).empty());
        CHECK(serialize_record(a[i]) == serialize_record(b[i]));
        ids.insert(a[i].id);
        if (!resolve(a[i]).assignable) ++unassignable;
        if (a[i].field_assignments.size() > 1) ++multi;
    }
    CHECK(ids.size() == a.size());
    CHECK(unassignable > 0);
    CHECK(multi > 0);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs = differs || serialize_record(a[i]) != serialize_record(other[i]);
    CHECK(differs);
}

TEST_CASE("cells do not depend on the other cells") {
    auto c = small_config();
    c.multi_field_prob = 0;
    auto wide = simulate_corpus(c, 5);
    c.fields = 1;
    c.first_year += 1;
    c.years = 1;
    auto narrow = simulate_corpus(c, 5);
    std::map<std::string, std::string> by_id;
    for (const auto& r : wide) by_id[r.id] = serialize_record(r);
    REQUIRE_FALSE(narrow.empty());
    for (const auto& r : narrow) {
        REQUIRE(by_id.contains(r.id));
        CHECK(by_id[r.id] == serialize_record(r));
    }
}

TEST_CASE("single-unit config gives one unit per publication") {
    auto c = load_simulation_config(fixtures::data_path("sim/single_unit.json"));
    auto corpus = resolve_all(simulate_corpus(c, 1));
    for (const auto& p : corpus)
        for (auto level : {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country}) CHECK(unit_count(p, level) == 1);
}

TEST_CASE("citation rate follows the coupling exponent") {
    auto c = small_config();
    c.pubs_per_field_year = 2000;
    c.fields = 1;
    c.years = 1;
    c.unassignable_prob = 0;
    c.citation.beta = 1.0;
    c.citation.coupling_level = UnitLevel::Author;
    auto corpus = resolve_all(simulate_corpus(c, 3));
    std::map<std::size_t, std::pair<double, int>> by_m;
    for (const auto& p : corpus) {
        auto& s = by_m[unit_count(p, UnitLevel::Author)];
        s.first += static_cast<double>(p.record.citations);
        ++s.second;
    }
    double low = by_m.begin()->second.first / by_m.begin()->second.second;
    double high = by_m.rbegin()->second.first / by_m.rbegin()->second.second;
    CHECK(high > 2 * low);
}
