#include "bibcount/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace bibcount {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(DocType type) {
    switch (type) {
        case DocType::Article: return "article";
        case DocType::Review: return "review";
        case DocType::Other: return "other";
    }
    return "other";
}

std::string_view to_string(UnitLevel level) {
    switch (level) {
        case UnitLevel::Author: return "author";
        case UnitLevel::Organization: return "organization";
        case UnitLevel::Country: return "country";
    }
    return "author";
}

std::optional<DocType> parse_doc_type(std::string_view text) {
    if (text == "article") return DocType::Article;
    if (text == "review") return DocType::Review;
    if (text == "other") return DocType::Other;
    return std::nullopt;
}

std::optional<UnitLevel> parse_unit_level(std::string_view text) {
    if (text == "author") return UnitLevel::Author;
    if (text == "organization") return UnitLevel::Organization;
    if (text == "country") return UnitLevel::Country;
    return std::nullopt;
}

DocTypeFilter default_doc_type_filter() { return {DocType::Article, DocType::Review}; }

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool blank(std::string_view s) { return std::all_of(s.begin(), s.end(), is_space); }

}  // namespace

std::string normalize_name(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        out.push_back(c);
    }
    return out;
}

bool same_address(const AddressEntry& a, const AddressEntry& b) {
    return normalize_name(a.organization) == normalize_name(b.organization) &&
           normalize_name(a.country) == normalize_name(b.country);
}

std::string ValidationIssue::describe() const {
    std::ostringstream os;
    os << "record '" << record_id << "'";
    if (line != 0) os << " (line " << line << ")";
    os << ": " << rule;
    return os.str();
}

std::vector<ValidationIssue> validate(const PublicationRecord& r) {
    std::vector<ValidationIssue> issues;
    auto fail = [&](std::string rule) { issues.push_back({r.id, 0, std::move(rule)}); };

    if (blank(r.id)) fail("id must be non-empty");
    if (r.citations < 0) fail("citations must be non-negative");
    if (r.authors.empty()) fail("authors must be non-empty");
    for (std::size_t i = 0; i < r.authors.size(); ++i)
        if (blank(r.authors[i])) fail("author " + std::to_string(i + 1) + " has an empty name");

    auto check_address = [&](const AddressEntry& a, const std::string& where) {
        if (blank(a.organization)) fail(where + " has an empty organization name");
        if (blank(a.country)) fail(where + " has an empty country name");
    };
    for (std::size_t i = 0; i < r.regular_addresses.size(); ++i)
        check_address(r.regular_addresses[i], "regular address " + std::to_string(i + 1));
    if (r.reprint_address) check_address(*r.reprint_address, "reprint address");

    if (r.author_address_links) {
        const auto& links = *r.author_address_links;
        if (links.size() != r.authors.size()) {
            fail("author_address_links has " + std::to_string(links.size()) +
                 " entries but there are " + std::to_string(r.authors.size()) + " authors");
        }
        for (std::size_t a = 0; a < links.size(); ++a) {
            for (std::size_t idx : links[a]) {
                if (idx < 1 || idx > r.regular_addresses.size()) {
                    fail("author " + std::to_string(a + 1) + " links to address index " +
                         std::to_string(idx) + " but there are " +
                         std::to_string(r.regular_addresses.size()) + " regular addresses");
                }
            }
        }
    }
    if (r.corresponding_author_index) {
        std::size_t idx = *r.corresponding_author_index;
        if (idx < 1 || idx > r.authors.size())
            fail("corresponding_author_index " + std::to_string(idx) + " is out of range");
    }

    if (r.field_assignments.empty()) fail("field_assignments must be non-empty");
    std::unordered_set<std::string> seen;
    for (const auto& f : r.field_assignments) {
        if (blank(f)) fail("field_assignments contains an empty field id");
        if (!seen.insert(f).second) fail("field_assignments contains duplicate field '" + f + "'");
    }
    return issues;
}

CorpusParseError::CorpusParseError(std::size_t line, const std::string& what)
    : CorpusError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
    std::string msg = std::to_string(issues.size()) + " validation issue(s)";
    for (const auto& i : issues) msg += "\n  " + i.describe();
    return msg;
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "id",       "year",          "doc_type",        "citations",
    "authors",  "regular_addresses", "reprint_address", "author_address_links",
    "corresponding_author_index", "field_assignments"};

struct FieldReader {
    const json& obj;
    std::size_t line;

    [[noreturn]] void bad(const std::string& key, const std::string& expected) const {
        throw CorpusParseError(line, "key '" + key + "' must be " + expected);
    }

    const json& required(const std::string& key) const {
        auto it = obj.find(key);
        if (it == obj.end()) throw CorpusParseError(line, "missing required key '" + key + "'");
        return *it;
    }

    const json* optional(const std::string& key) const {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return nullptr;
        return &*it;
    }

    std::string string(const json& v, const std::string& key) const {
        if (!v.is_string()) bad(key, "a string");
        return v.get<std::string>();
    }

    std::int64_t integer(const json& v, const std::string& key) const {
        if (!v.is_number_integer()) bad(key, "an integer");
        return v.get<std::int64_t>();
    }

    std::size_t index(const json& v, const std::string& key) const {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) bad(key, "non-negative integers");
        return v.get<std::size_t>();
    }

    std::vector<std::string> strings(const json& v, const std::string& key) const {
        if (!v.is_array()) bad(key, "an array of strings");
        std::vector<std::string> out;
        for (const auto& e : v) out.push_back(string(e, key));
        return out;
    }

    AddressEntry address(const json& v, const std::string& key) const {
        if (!v.is_object()) bad(key, "an object with 'organization' and 'country'");
        for (const auto& [k, _] : v.items())
            if (k != "organization" && k != "country") bad(key, "an object with only 'organization' and 'country'");
        auto org = v.find("organization");
        auto country = v.find("country");
        if (org == v.end() || country == v.end())
            bad(key, "an object with 'organization' and 'country'");
        return {string(*org, key + ".organization"), string(*country, key + ".country")};
    }
};

}  // namespace

CorpusValidationError::CorpusValidationError(std::vector<ValidationIssue> issues)
    : CorpusError(join_issues(issues)), issues_(std::move(issues)) {}

PublicationRecord parse_record(std::string_view line, std::size_t line_number) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw CorpusParseError(line_number, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw CorpusParseError(line_number, "record must be a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!kKnownKeys.contains(key)) throw CorpusParseError(line_number, "unknown key '" + key + "'");

    FieldReader rd{obj, line_number};
    PublicationRecord r;
    r.id = rd.string(rd.required("id"), "id");
    r.year = static_cast<int>(rd.integer(rd.required("year"), "year"));
    auto type = parse_doc_type(rd.string(rd.required("doc_type"), "doc_type"));
    if (!type) rd.bad("doc_type", "one of article, review, other");
    r.doc_type = *type;
    r.citations = rd.integer(rd.required("citations"), "citations");
    r.authors = rd.strings(rd.required("authors"), "authors");
    r.field_assignments = rd.strings(rd.required("field_assignments"), "field_assignments");

    if (const json* addrs = rd.optional("regular_addresses")) {
        if (!addrs->is_array()) rd.bad("regular_addresses", "an array");
        for (const auto& a : *addrs) r.regular_addresses.push_back(rd.address(a, "regular_addresses"));
    }
    if (const json* rp = rd.optional("reprint_address")) r.reprint_address = rd.address(*rp, "reprint_address");
    if (const json* links = rd.optional("author_address_links")) {
        if (!links->is_array()) rd.bad("author_address_links", "an array of index arrays");
        std::vector<std::vector<std::size_t>> out;
        for (const auto& per_author : *links) {
            if (!per_author.is_array()) rd.bad("author_address_links", "an array of index arrays");
            std::vector<std::size_t> idx;
            for (const auto& i : per_author) idx.push_back(rd.index(i, "author_address_links"));
            out.push_back(std::move(idx));
        }
        r.author_address_links = std::move(out);
    }
    if (const json* ca = rd.optional("corresponding_author_index"))
        r.corresponding_author_index = rd.index(*ca, "corresponding_author_index");
    return r;
}

std::string serialize_record(const PublicationRecord& r) {
    auto address = [](const AddressEntry& a) {
        ordered_json j;
        j["organization"] = a.organization;
        j["country"] = a.country;
        return j;
    };
    ordered_json j;
    j["id"] = r.id;
    j["year"] = r.year;
    j["doc_type"] = std::string(to_string(r.doc_type));
    j["citations"] = r.citations;
    j["authors"] = r.authors;
    j["regular_addresses"] = ordered_json::array();
    for (const auto& a : r.regular_addresses) j["regular_addresses"].push_back(address(a));
    j["reprint_address"] = r.reprint_address ? address(*r.reprint_address) : ordered_json(nullptr);
    j["author_address_links"] =
        r.author_address_links ? ordered_json(*r.author_address_links) : ordered_json(nullptr);
    j["corresponding_author_index"] =
        r.corresponding_author_index ? ordered_json(*r.corresponding_author_index) : ordered_json(nullptr);
    j["field_assignments"] = r.field_assignments;
    return j.dump();
}

CorpusReadResult read_corpus(std::istream& in, const DocTypeFilter& filter) {
    CorpusReadResult result;
    std::map<std::string, std::size_t> first_line_of_id;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line)) continue;
        PublicationRecord rec = parse_record(line, line_number);
        if (!filter.contains(rec.doc_type)) {
            ++result.filtered_out;
            continue;
        }
        auto issues = validate(rec);
        auto [it, inserted] = first_line_of_id.emplace(rec.id, line_number);
        if (!inserted)
            issues.push_back({rec.id, 0, "duplicate id (first seen on line " + std::to_string(it->second) + ")"});
        if (issues.empty()) {
            result.records.push_back(std::move(rec));
        } else {
            for (auto& i : issues) {
                i.line = line_number;
                result.issues.push_back(std::move(i));
            }
        }
    }
    return result;
}

std::vector<PublicationRecord> load_corpus(const std::filesystem::path& path, const DocTypeFilter& filter) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus file " + path.string());
    CorpusReadResult result = read_corpus(in, filter);
    if (!result.issues.empty()) throw CorpusValidationError(std::move(result.issues));
    return std::move(result.records);
}

void write_corpus(std::ostream& out, std::span<const PublicationRecord> records) {
    for (const auto& r : records) out << serialize_record(r) << '\n';
}

bool ResolvedPublication::has_unlinked_author() const {
    if (!assignable) return false;
    return std::any_of(author_links.begin(), author_links.end(),
                       [](const auto& l) { return l.empty(); });
}

ResolvedPublication resolve(const PublicationRecord& record) {
    ResolvedPublication r;
    r.record = record;
    const auto& regular = record.regular_addresses;
    const std::size_t n_authors = record.authors.size();

    if (!regular.empty()) {
        r.weight_addresses = regular;
    } else if (record.reprint_address) {
        r.weight_addresses = {*record.reprint_address};
    }

    r.unit_count_addresses = regular;
    if (record.reprint_address) {
        const auto& rp = *record.reprint_address;
        bool present = std::any_of(regular.begin(), regular.end(),
                                   [&](const AddressEntry& a) { return same_address(a, rp); });
        if (!present) r.unit_count_addresses.push_back(rp);
    }
    r.assignable = !r.unit_count_addresses.empty();

    r.author_links.assign(n_authors, {});
    if (regular.empty()) {
        if (record.reprint_address)
            for (auto& l : r.author_links) l = {0};
    } else if (!record.author_address_links) {
        std::vector<std::size_t> all(regular.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        for (auto& l : r.author_links) l = all;
    } else {
        const auto& links = *record.author_address_links;
        for (std::size_t a = 0; a < n_authors && a < links.size(); ++a) {
            std::vector<std::size_t> idx;
            for (std::size_t one_based : links[a]) idx.push_back(one_based - 1);
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            r.author_links[a] = std::move(idx);
        }
    }

    if (record.corresponding_author_index) {
        r.corresponding_author = *record.corresponding_author_index;
    } else if (record.reprint_address) {
        r.corresponding_by_reprint = true;
        r.corresponding_author = 1;
        for (std::size_t a = 0; a < n_authors; ++a) {
            const auto& links = r.author_links[a];
            bool matches = std::any_of(links.begin(), links.end(), [&](std::size_t i) {
                return same_address(r.weight_addresses[i], *record.reprint_address);
            });
            if (matches) {
                r.corresponding_author = a + 1;
                break;
            }
        }
    } else {
        r.corresponding_author = 1;
    }

    r.author_units = author_unit_ids(record);
    for (const auto& a : r.unit_count_addresses) {
        for (auto [level, units] : {std::pair{UnitLevel::Organization, &r.organization_units},
                                    std::pair{UnitLevel::Country, &r.country_units}}) {
            std::string u = address_unit(a, level);
            if (std::find(units->begin(), units->end(), u) == units->end()) units->push_back(std::move(u));
        }
    }
    for (const auto& a : r.weight_addresses) {
        r.weight_organizations.push_back(address_unit(a, UnitLevel::Organization));
        r.weight_countries.push_back(address_unit(a, UnitLevel::Country));
    }
    return r;
}

std::vector<ResolvedPublication> resolve_all(std::span<const PublicationRecord> records) {
    std::vector<ResolvedPublication> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(resolve(r));
    return out;
}

PublicationRecord as_record(const ResolvedPublication& pub) {
    PublicationRecord r = pub.record;
    r.regular_addresses = pub.weight_addresses;
    std::vector<std::vector<std::size_t>> links;
    for (const auto& l : pub.author_links) {
        std::vector<std::size_t> one_based;
        for (std::size_t i : l) one_based.push_back(i + 1);
        links.push_back(std::move(one_based));
    }
    r.author_address_links = std::move(links);
    if (!pub.corresponding_by_reprint) r.corresponding_author_index = pub.corresponding_author;
    return r;
}

std::vector<std::string> author_unit_ids(const PublicationRecord& record) {
    std::vector<std::string> ids;
    std::map<std::string, int> seen;
    for (const auto& name : record.authors) {
        std::string norm = normalize_name(name);
        int k = ++seen[norm];
        ids.push_back(k == 1 ? norm : norm + "#" + std::to_string(k));
    }
    return ids;
}

std::string address_unit(const AddressEntry& address, UnitLevel level) {
    return normalize_name(level == UnitLevel::Country ? address.country : address.organization);
}

const std::vector<std::string>& ResolvedPublication::units(UnitLevel level) const {
    switch (level) {
        case UnitLevel::Author: return author_units;
        case UnitLevel::Organization: return organization_units;
        case UnitLevel::Country: return country_units;
    }
    return author_units;
}

const std::string& ResolvedPublication::weight_unit(std::size_t position, UnitLevel level) const {
    return level == UnitLevel::Country ? weight_countries.at(position) : weight_organizations.at(position);
}

std::vector<std::string> enumerate_units(const ResolvedPublication& pub, UnitLevel level) { return pub.units(level); }

std::size_t unit_count(const ResolvedPublication& pub, UnitLevel level) { return pub.units(level).size(); }

}  // namespace bibcount
