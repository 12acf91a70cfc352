#pragma once

#include <string>
#include <vector>

#include "bibcount/corpus.hpp"

namespace fixtures {

inline std::string data_path(const std::string& relative) { return std::string(BIBCOUNT_DATA_DIR) + "/" + relative; }
inline std::string golden_path(const std::string& name) { return std::string(BIBCOUNT_GOLDEN_DIR) + "/" + name; }

inline bibcount::PublicationRecord single_country(std::string id, std::string country, std::int64_t citations,
                                                  std::string field = "F", int year = 2010) {
    bibcount::PublicationRecord r;
    r.id = std::move(id);
    r.year = year;
    r.citations = citations;
    r.authors = {"Author " + r.id};
    r.regular_addresses = {{"Org " + country, "Country " + country}};
    r.field_assignments = {std::move(field)};
    return r;
}

inline bibcount::PublicationRecord two_country(std::string id, std::string a, std::string b, std::int64_t citations,
                                               std::string field = "F", int year = 2010) {
    bibcount::PublicationRecord r;
    r.id = std::move(id);
    r.year = year;
    r.citations = citations;
    r.authors = {"Author " + r.id + a, "Author " + r.id + b};
    r.regular_addresses = {{"Org " + a, "Country " + a}, {"Org " + b, "Country " + b}};
    r.author_address_links = std::vector<std::vector<std::size_t>>{{1}, {2}};
    r.field_assignments = {std::move(field)};
    return r;
}

/// The five-author, five-address publication used to illustrate the
/// counting methods.
inline bibcount::PublicationRecord example_publication() {
    bibcount::PublicationRecord r;
    r.id = "example";
    r.year = 2010;
    r.authors = {"Author 1", "Author 2", "Author 3", "Author 4", "Author 5"};
    r.regular_addresses = {{"Organization 1", "Country 1"},
                           {"Organization 1", "Country 1"},
                           {"Organization 2", "Country 2"},
                           {"Organization 3", "Country 2"},
                           {"Organization 4", "Country 3"}};
    r.author_address_links = std::vector<std::vector<std::size_t>>{{1}, {1, 2}, {3}, {3}, {4, 5}};
    r.corresponding_author_index = 4;
    r.field_assignments = {"F"};
    return r;
}

/// Four publications of countries A and B in one field.
inline std::vector<bibcount::PublicationRecord> single_field_corpus() {
    return {single_country("pub1", "A", 3), single_country("pub2", "A", 6), single_country("pub3", "B", 1),
            two_country("pub4", "A", "B", 10)};
}

/// Six publications: A and B in field X, C and D in field Y.
inline std::vector<bibcount::PublicationRecord> multi_field_corpus() {
    return {single_country("pub1", "A", 10, "X"), single_country("pub2", "B", 10, "X"),
            two_country("pub3", "A", "B", 10, "X"),  single_country("pub4", "C", 4, "Y"),
            single_country("pub5", "D", 4, "Y"),     two_country("pub6", "C", "D", 7, "Y")};
}

}  // namespace fixtures
