#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the normalization, indicator or bonus modules.

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "bibcount/corpus.hpp"
#include "bibcount/rational.hpp"

namespace oracle {

using bibcount::Rational;

/// Top-10% membership by filling a bucket of size 10% of the total mass from
/// the most cited publication downwards, tied publications sharing the
/// remaining room equally. Input: (citations, mass) per publication.
std::vector<Rational> top10_by_filling(std::span<const std::pair<std::int64_t, Rational>> pubs);

/// Mean citations of the (field, year) cell, each publication weighted by
/// 1/k for its k fields.
Rational field_mean(std::span<const bibcount::ResolvedPublication> corpus, const std::string& field, int year);

/// citations / field mean averaged over the publication's fields, by direct
/// enumeration of the corpus.
Rational ncs(std::span<const bibcount::ResolvedPublication> corpus, const bibcount::ResolvedPublication& pub);

/// Top-10% score averaged over the publication's fields via top10_by_filling.
Rational top10(std::span<const bibcount::ResolvedPublication> corpus, const bibcount::ResolvedPublication& pub);

struct FuzzOptions {
    std::size_t publications = 50;
    int fields = 3;
    int years = 2;
    bool allow_unassignable = true;
    bool allow_empty_links = true;
};

/// Random but valid records exercising the metadata fallbacks: missing
/// links, reprint-only publications, explicit empty link lists, duplicate
/// author names, organizations spanning two countries, multi-field publications.
std::vector<bibcount::PublicationRecord> fuzz_corpus(std::mt19937_64& rng, const FuzzOptions& options);

}  // namespace oracle
