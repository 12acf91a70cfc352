#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bibcount {

enum class DocType { Article, Review, Other };
enum class UnitLevel { Author, Organization, Country };

std::string_view to_string(DocType type);
std::string_view to_string(UnitLevel level);
std::optional<DocType> parse_doc_type(std::string_view text);
std::optional<UnitLevel> parse_unit_level(std::string_view text);

using DocTypeFilter = std::set<DocType>;

/// Document types kept by default (articles and reviews).
DocTypeFilter default_doc_type_filter();

/// Trim, collapse internal whitespace runs to one space, ASCII case-fold.
/// Two names denote the same unit iff their normalized forms are equal.
std::string normalize_name(std::string_view raw);

struct AddressEntry {
    std::string organization;
    std::string country;

    friend bool operator==(const AddressEntry&, const AddressEntry&) = default;
};

/// Normalized identity of an address (organization and country).
bool same_address(const AddressEntry& a, const AddressEntry& b);

struct PublicationRecord {
    std::string id;
    int year = 0;
    DocType doc_type = DocType::Article;
    std::int64_t citations = 0;
    std::vector<std::string> authors;
    std::vector<AddressEntry> regular_addresses;
    std::optional<AddressEntry> reprint_address;
    /// Per author, 1-based positions in regular_addresses.
    std::optional<std::vector<std::vector<std::size_t>>> author_address_links;
    /// 1-based position in authors.
    std::optional<std::size_t> corresponding_author_index;
    std::vector<std::string> field_assignments;
};

struct ValidationIssue {
    std::string record_id;
    std::size_t line = 0;  // 0 when not read from a file
    std::string rule;

    std::string describe() const;
};

/// Invariant violations of a single record.
std::vector<ValidationIssue> validate(const PublicationRecord& record);

class CorpusError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class CorpusParseError : public CorpusError {
   public:
    CorpusParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

class CorpusValidationError : public CorpusError {
   public:
    explicit CorpusValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

   private:
    std::vector<ValidationIssue> issues_;
};

/// Parse one corpus line. Throws CorpusParseError on malformed JSON or a
/// schema mismatch (wrong key type, unknown key, missing required key).
PublicationRecord parse_record(std::string_view line, std::size_t line_number = 0);

/// Serialize a record as one corpus line (keys in schema order).
std::string serialize_record(const PublicationRecord& record);

struct CorpusReadResult {
    std::vector<PublicationRecord> records;
    std::vector<ValidationIssue> issues;
    std::size_t filtered_out = 0;
};

/// Reads every line, collects validation issues (including duplicate ids)
/// instead of throwing on them. Parse errors still throw.
CorpusReadResult read_corpus(std::istream& in, const DocTypeFilter& filter);

/// Strict loader: throws CorpusParseError or CorpusValidationError.
std::vector<PublicationRecord> load_corpus(const std::filesystem::path& path,
                                           const DocTypeFilter& filter = default_doc_type_filter());

void write_corpus(std::ostream& out, std::span<const PublicationRecord> records);

/// A record after the fallback rules for incomplete metadata are applied.
struct ResolvedPublication {
    PublicationRecord record;
    /// Per author, distinct 0-based positions in weight_addresses.
    std::vector<std::vector<std::size_t>> author_links;
    /// 1-based.
    std::size_t corresponding_author = 1;
    /// True when corresponding-author counting at organization/country level
    /// uses the reprint address instead of the corresponding author's links.
    bool corresponding_by_reprint = false;
    std::vector<AddressEntry> weight_addresses;
    std::vector<AddressEntry> unit_count_addresses;
    bool assignable = false;

    /// Normalized unit identifiers, filled in by resolve(): the units of each
    /// level in enumeration order, and the organization and country of every
    /// weight address.
    std::vector<std::string> author_units;
    std::vector<std::string> organization_units;
    std::vector<std::string> country_units;
    std::vector<std::string> weight_organizations;
    std::vector<std::string> weight_countries;

    const std::string& id() const { return record.id; }
    bool has_unlinked_author() const;
    const std::vector<std::string>& units(UnitLevel level) const;
    /// Unit of the weight address at `position` (organization or country level).
    const std::string& weight_unit(std::size_t position, UnitLevel level) const;
};

ResolvedPublication resolve(const PublicationRecord& record);
std::vector<ResolvedPublication> resolve_all(std::span<const PublicationRecord> records);

/// Re-express the effective fields as an input record (used to check that
/// resolution is idempotent).
PublicationRecord as_record(const ResolvedPublication& pub);

/// Author unit identifiers: normalized name, with "#k" appended to the k-th
/// repeat of a name inside one publication.
std::vector<std::string> author_unit_ids(const PublicationRecord& record);

/// Normalized unit identifier of an address at organization or country level.
std::string address_unit(const AddressEntry& address, UnitLevel level);

/// Ordered set of co-authoring units. Organization and country units come
/// from regular plus reprint addresses; empty for a non-assignable
/// publication at those levels.
std::vector<std::string> enumerate_units(const ResolvedPublication& pub, UnitLevel level);

/// Number of units, the m of a publication at a level.
std::size_t unit_count(const ResolvedPublication& pub, UnitLevel level);

}  // namespace bibcount
