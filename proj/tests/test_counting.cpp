#include <doctest.h>

#include <algorithm>
#include <random>

#include "bibcount/counting.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bibcount;

namespace {

std::vector<Rational> weights(const ResolvedPublication& p, UnitLevel level, CountingMethod method) {
    std::vector<Rational> out;
    for (const auto& w : compute_weights(p, level, method).weights) out.push_back(w.weight);
    return out;
}

std::vector<Rational> q(std::initializer_list<std::pair<long, long>> values) {
    std::vector<Rational> out;
    for (auto [n, d] : values) {
        Rational r(n, d);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

const ResolvedPublication& example() {
    static const ResolvedPublication p = resolve(fixtures::example_publication());
    return p;
}

}  // namespace

TEST_CASE("method names") {
    for (auto m : kAllMethods) CHECK(parse_counting_method(to_string(m)) == m);
    CHECK_FALSE(parse_counting_method("fractional"));
    CHECK(methods_at(UnitLevel::Author).size() == 5);
    CHECK(methods_at(UnitLevel::Organization).size() == 6);
    CHECK(methods_at(UnitLevel::Country).size() == 7);
}

TEST_CASE("author weights of the example publication") {
    const auto& p = example();
    CHECK(weights(p, UnitLevel::Author, CountingMethod::Full) == q({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}));
    CHECK(weights(p, UnitLevel::Author, CountingMethod::FracAuthor) == q({{1, 5}, {1, 5}, {1, 5}, {1, 5}, {1, 5}}));
    CHECK(weights(p, UnitLevel::Author, CountingMethod::FirstAuthor) == q({{1, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}));
    CHECK(weights(p, UnitLevel::Author, CountingMethod::CorrespondingAuthor) ==
          q({{0, 1}, {0, 1}, {0, 1}, {1, 1}, {0, 1}}));
    // Each address's fifth is shared by the authors listing it.
    CHECK(weights(p, UnitLevel::Author, CountingMethod::FracAddress) == q({{1, 10}, {3, 10}, {1, 10}, {1, 10}, {2, 5}}));
}

TEST_CASE("organization weights of the example publication") {
    const auto& p = example();
    const auto level = UnitLevel::Organization;
    CHECK(enumerate_units(p, level).size() == 4);
    CHECK(weights(p, level, CountingMethod::Full) == q({{1, 1}, {1, 1}, {1, 1}, {1, 1}}));
    CHECK(weights(p, level, CountingMethod::FracOrg) == q({{1, 4}, {1, 4}, {1, 4}, {1, 4}}));
    CHECK(weights(p, level, CountingMethod::FracAddress) == q({{2, 5}, {1, 5}, {1, 5}, {1, 5}}));
    CHECK(weights(p, level, CountingMethod::FracAuthor) == q({{2, 5}, {2, 5}, {1, 10}, {1, 10}}));
    CHECK(weights(p, level, CountingMethod::FirstAuthor) == q({{1, 1}, {0, 1}, {0, 1}, {0, 1}}));
    CHECK(weights(p, level, CountingMethod::CorrespondingAuthor) == q({{0, 1}, {1, 1}, {0, 1}, {0, 1}}));
    CHECK_THROWS_AS(compute_weights(p, level, CountingMethod::FracCountry), UsageError);
}

TEST_CASE("country weights of the example publication") {
    const auto& p = example();
    const auto level = UnitLevel::Country;
    CHECK(weights(p, level, CountingMethod::Full) == q({{1, 1}, {1, 1}, {1, 1}}));
    CHECK(weights(p, level, CountingMethod::FracCountry) == q({{1, 3}, {1, 3}, {1, 3}}));
    CHECK(weights(p, level, CountingMethod::FracOrg) == q({{1, 4}, {1, 2}, {1, 4}}));
    CHECK(weights(p, level, CountingMethod::FracAddress) == q({{2, 5}, {2, 5}, {1, 5}}));
    CHECK(weights(p, level, CountingMethod::FracAuthor) == q({{2, 5}, {1, 2}, {1, 10}}));
    CHECK(weights(p, level, CountingMethod::FirstAuthor) == q({{1, 1}, {0, 1}, {0, 1}}));
    CHECK(weights(p, level, CountingMethod::CorrespondingAuthor) == q({{0, 1}, {1, 1}, {0, 1}}));
    CHECK(format_decimal(Rational(1, 3), 2) == "0.33");
}

TEST_CASE("method not valid at level") {
    CHECK_THROWS_AS(compute_weights(example(), UnitLevel::Author, CountingMethod::FracOrg), UsageError);
    CHECK_THROWS_AS(compute_weights(example(), UnitLevel::Author, CountingMethod::FracCountry), UsageError);
}

TEST_CASE("organization in two countries splits its share") {
    PublicationRecord r;
    r.id = "x";
    r.year = 2010;
    r.authors = {"A", "B"};
    r.regular_addresses = {{"Shared", "Country 1"}, {"Shared", "Country 2"}, {"Other", "Country 1"}};
    r.field_assignments = {"F"};
    auto p = resolve(r);
    CHECK(enumerate_units(p, UnitLevel::Organization).size() == 2);
    CHECK(weights(p, UnitLevel::Country, CountingMethod::FracOrg) == q({{3, 4}, {1, 4}}));
}

TEST_CASE("designated author splits between several units") {
    auto r = fixtures::example_publication();
    r.corresponding_author_index = 5;
    auto p = resolve(r);
    CHECK(weights(p, UnitLevel::Organization, CountingMethod::CorrespondingAuthor) == q({{0, 1}, {0, 1}, {1, 2}, {1, 2}}));
    CHECK(weights(p, UnitLevel::Country, CountingMethod::CorrespondingAuthor) == q({{0, 1}, {1, 2}, {1, 2}}));
}

TEST_CASE("corresponding counting uses the reprint address when no author is designated") {
    auto r = fixtures::example_publication();
    r.corresponding_author_index.reset();
    r.reprint_address = AddressEntry{"Organization 9", "Country 9"};
    auto p = resolve(r);
    auto w = compute_weights(p, UnitLevel::Country, CountingMethod::CorrespondingAuthor);
    CHECK(w.weight_of("country 9") == 1);
    CHECK(w.total() == 1);
    CHECK(compute_weights(p, UnitLevel::Author, CountingMethod::CorrespondingAuthor).weight_of("author 1") == 1);
}

TEST_CASE("unassignable publication") {
    PublicationRecord r;
    r.id = "u";
    r.year = 2010;
    r.authors = {"A", "B"};
    r.field_assignments = {"F"};
    auto p = resolve(r);
    auto w = compute_weights(p, UnitLevel::Country, CountingMethod::Full);
    CHECK_FALSE(w.assignable);
    CHECK(w.weights.empty());
    CHECK(compute_weights(p, UnitLevel::Author, CountingMethod::FracAuthor).total() == 1);
    auto frac_address = compute_weights(p, UnitLevel::Author, CountingMethod::FracAddress);
    CHECK(frac_address.assignable);
    CHECK(frac_address.weight_of("a") == Rational(1, 2));
}

TEST_CASE("weighted publication counts") {
    auto corpus = resolve_all(fixtures::single_field_corpus());
    auto full = weighted_publication_count(corpus, UnitLevel::Country, CountingMethod::Full);
    CHECK(full.at("country a") == 3);
    CHECK(full.at("country b") == 2);
    auto frac = weighted_publication_count(corpus, UnitLevel::Country, CountingMethod::FracCountry);
    CHECK(frac.at("country a") == Rational(5, 2));
    CHECK(frac.at("country b") == Rational(3, 2));
    auto first = weighted_publication_count(corpus, UnitLevel::Country, CountingMethod::FirstAuthor);
    CHECK(first.at("country a") == 3);
    CHECK(first.at("country b") == 1);
}

TEST_CASE("fuzzed weight properties") {
    std::mt19937_64 rng(5);
    oracle::FuzzOptions options;
    options.publications = 300;
    for (const auto& p : resolve_all(oracle::fuzz_corpus(rng, options))) {
        for (auto level : {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country}) {
            auto full = compute_weights(p, level, CountingMethod::Full);
            auto units = enumerate_units(p, level);
            for (auto method : methods_at(level)) {
                auto w = compute_weights(p, level, method);
                if (!w.assignable) continue;
                CHECK(w.weights.size() == units.size());
                if (sums_to_one(method)) CHECK(w.total() == 1);
                for (const auto& uw : w.weights) {
                    CHECK(uw.weight >= 0);
                    CHECK(uw.weight <= full.weight_of(uw.unit));
                }
            }
        }
    }
}

TEST_CASE("weights do not depend on the order of addresses") {
    auto r = fixtures::example_publication();
    r.author_address_links.reset();
    auto before = resolve(r);
    std::reverse(r.regular_addresses.begin(), r.regular_addresses.end());
    auto after = resolve(r);
    for (auto level : {UnitLevel::Organization, UnitLevel::Country})
        for (auto method : methods_at(level)) {
            auto a = compute_weights(before, level, method);
            auto b = compute_weights(after, level, method);
            for (const auto& uw : a.weights) CHECK(b.weight_of(uw.unit) == uw.weight);
        }
}

TEST_CASE("with one country per publication every method agrees") {
    auto corpus = resolve_all(std::vector<PublicationRecord>{fixtures::single_country("a", "A", 1),
                                                             fixtures::single_country("b", "B", 2)});
    auto full = weighted_publication_count(corpus, UnitLevel::Country, CountingMethod::Full);
    for (auto method : methods_at(UnitLevel::Country))
        CHECK(weighted_publication_count(corpus, UnitLevel::Country, method) == full);
}
