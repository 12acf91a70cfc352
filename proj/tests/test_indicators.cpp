#include <doctest.h>

#include <random>

#include "bibcount/indicators.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bibcount;

namespace {

struct Scored {
    std::vector<ResolvedPublication> corpus;
    std::vector<NormalizedScores<Rational>> scores;
};

Scored scored(const std::vector<PublicationRecord>& records) {
    Scored s;
    s.corpus = resolve_all(records);
    s.scores = score_corpus<Rational>(s.corpus, build_field_year_stats<Rational>(s.corpus));
    return s;
}

const UnitIndicatorRow<Rational>& row_of(const std::vector<UnitIndicatorRow<Rational>>& rows, const std::string& unit) {
    for (const auto& r : rows)
        if (r.unit == unit) return r;
    FAIL("no row for " << unit);
    return rows.front();
}

}  // namespace

TEST_CASE("single-field example under full and country-level fractional counting") {
    auto s = scored(fixtures::single_field_corpus());
    auto full = unit_indicators<Rational>(s.corpus, s.scores, UnitLevel::Country, CountingMethod::Full);
    REQUIRE(full.size() == 2);
    CHECK(full[0].unit == "country a");
    CHECK(row_of(full, "country a").mncs == Rational(19, 15));
    CHECK(row_of(full, "country b").mncs == Rational(11, 10));
    CHECK(row_of(full, "country a").p == 3);
    CHECK(world_average<Rational>(full, Indicator::Mncs).value == Rational(6, 5));

    auto frac = unit_indicators<Rational>(s.corpus, s.scores, UnitLevel::Country, CountingMethod::FracCountry);
    CHECK(row_of(frac, "country a").mncs == Rational(28, 25));
    CHECK(row_of(frac, "country b").mncs == Rational(4, 5));
    CHECK(world_average<Rational>(frac, Indicator::Mncs).value == 1);
    CHECK(world_average<Rational>(frac, Indicator::PpTop10).value == Rational(1, 10));
}

TEST_CASE("multi-field example") {
    auto s = scored(fixtures::multi_field_corpus());
    auto full = unit_indicators<Rational>(s.corpus, s.scores, UnitLevel::Country, CountingMethod::Full);
    auto frac = unit_indicators<Rational>(s.corpus, s.scores, UnitLevel::Country, CountingMethod::FracCountry);
    for (auto unit : {"country a", "country b", "country c", "country d"}) CHECK(row_of(frac, unit).mncs == 1);
    CHECK(row_of(full, "country c").mncs == Rational(11, 10));
    CHECK(row_of(full, "country d").mncs == Rational(11, 10));
    CHECK(row_of(full, "country a").mncs == 1);
}

TEST_CASE("world average needs weight") {
    std::vector<UnitIndicatorRow<Rational>> none;
    CHECK_THROWS_AS(world_average<Rational>(none, Indicator::Mncs), UndefinedAverageError);
}

TEST_CASE("comparison table") {
    auto s = scored(fixtures::single_field_corpus());
    std::vector<CountingMethod> methods{CountingMethod::Full, CountingMethod::FracCountry};
    auto t = comparison_table<Rational>(s.corpus, s.scores, UnitLevel::Country, methods, CountingMethod::Full);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.methods == methods);
    const auto& a = t.rows[0];
    CHECK(a.unit == "country a");
    REQUIRE(a.entries.size() == 2);
    CHECK(a.entries[0].p == 3);
    CHECK(a.entries[1].p == Rational(5, 2));
    CHECK(*a.entries[1].p_decrease == Rational(1, 6));
    CHECK(*a.entries[1].mncs_decrease == Rational(11, 75));
    CHECK(*a.entries[0].mncs_decrease == 0);

    std::vector<CountingMethod> one{CountingMethod::Full};
    CHECK_THROWS_AS(comparison_table<Rational>(s.corpus, s.scores, UnitLevel::Country, one, CountingMethod::Full),
                    UsageError);

    auto top = comparison_table<Rational>(s.corpus, s.scores, UnitLevel::Country, methods, CountingMethod::Full, 1);
    CHECK(top.rows.size() == 1);
}

TEST_CASE("units with no weight under a method have no values") {
    auto s = scored(fixtures::single_field_corpus());
    std::vector<CountingMethod> methods{CountingMethod::Full, CountingMethod::FirstAuthor};
    auto t = comparison_table<Rational>(s.corpus, s.scores, UnitLevel::Author, methods, CountingMethod::Full);
    bool found = false;
    for (const auto& row : t.rows)
        if (row.unit == "author pub4b") {
            found = true;
            CHECK(row.entries[1].p == 0);
            CHECK_FALSE(row.entries[1].mncs);
            CHECK(*row.entries[1].p_decrease == 1);
        }
    CHECK(found);
}

TEST_CASE("profile by number of countries") {
    auto s = scored(fixtures::single_field_corpus());
    auto p = profile<Rational>(s.corpus, s.scores, UnitLevel::Country);
    CHECK(p.included == 4);
    CHECK(p.excluded == 0);
    REQUIRE(p.buckets.size() == 2);
    CHECK(p.buckets[0].units == 1);
    CHECK(p.buckets[0].publications == 3);
    CHECK(p.buckets[0].share == Rational(3, 4));
    CHECK(p.buckets[0].mean_ncs == Rational(2, 3));
    CHECK(p.buckets[1].units == 2);
    CHECK(p.buckets[1].mean_ncs == 2);
}

TEST_CASE("full counting dominates fractional publication counts") {
    std::mt19937_64 rng(21);
    oracle::FuzzOptions options;
    options.publications = 150;
    auto s = scored(oracle::fuzz_corpus(rng, options));
    for (auto level : {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country}) {
        auto full = unit_indicators<Rational>(s.corpus, s.scores, level, CountingMethod::Full);
        for (auto method : methods_at(level)) {
            auto rows = unit_indicators<Rational>(s.corpus, s.scores, level, method);
            for (const auto& r : rows) CHECK(r.p <= row_of(full, r.unit).p);
        }
    }
}

TEST_CASE("strong normalization for fractional methods without exclusions") {
    std::mt19937_64 rng(22);
    oracle::FuzzOptions options;
    options.publications = 150;
    options.allow_unassignable = false;
    auto s = scored(oracle::fuzz_corpus(rng, options));
    for (auto level : {UnitLevel::Author, UnitLevel::Organization, UnitLevel::Country})
        for (auto method : methods_at(level)) {
            if (!sums_to_one(method)) continue;
            auto rows = unit_indicators<Rational>(s.corpus, s.scores, level, method);
            CHECK(world_average<Rational>(rows, Indicator::Mncs).value == 1);
            CHECK(world_average<Rational>(rows, Indicator::PpTop10).value == Rational(1, 10));
        }
}

TEST_CASE("double mode agrees with rational mode") {
    auto corpus = resolve_all(fixtures::single_field_corpus());
    auto scores = score_corpus<double>(corpus, build_field_year_stats<double>(corpus));
    auto rows = unit_indicators<double>(corpus, scores, UnitLevel::Country, CountingMethod::FracCountry);
    CHECK(rows[0].mncs == doctest::Approx(1.12));
    CHECK(world_average<double>(rows, Indicator::Mncs).value == doctest::Approx(1.0));
}
