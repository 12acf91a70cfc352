#include "bibcount/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include <json.hpp>

namespace bibcount {

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    return std::nullopt;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("cannot initialise SHA-256");
    char buffer[1 << 16];
    while (in) {
        in.read(buffer, sizeof buffer);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &length);

    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_cell(const Cell& cell, const NumberFormat& format) {
    struct Visitor {
        const NumberFormat& format;
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const Rational& q) const {
            return format.exact ? format_exact(q) : format_decimal(q, format.digits);
        }
    };
    return std::visit(Visitor{format}, cell);
}

void write_csv(std::ostream& out, const Table& table, const Provenance& prov, const NumberFormat& format) {
    out << "# bibcount " << kToolVersion << '\n';
    out << "# command: " << prov.command << '\n';
    if (!prov.input_name.empty()) out << "# input: " << prov.input_name << " sha256=" << prov.input_sha256 << '\n';
    for (const auto& [k, v] : prov.options) out << "# " << k << ": " << v << '\n';

    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(render_cell(row[i], format));
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table, const Provenance& prov, const NumberFormat& format) {
    using ojson = nlohmann::ordered_json;
    ojson doc;
    ojson p;
    p["tool"] = "bibcount";
    p["version"] = std::string(kToolVersion);
    p["command"] = prov.command;
    if (!prov.input_name.empty()) {
        p["input"] = prov.input_name;
        p["input_sha256"] = prov.input_sha256;
    }
    ojson options = ojson::object();
    for (const auto& [k, v] : prov.options) options[k] = v;
    p["options"] = options;
    doc["provenance"] = p;
    doc["columns"] = table.columns;
    doc["rows"] = ojson::array();
    for (const auto& row : table.rows) {
        ojson r = ojson::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& cell = row[i];
            ojson value;
            if (std::holds_alternative<std::monostate>(cell)) {
                value = nullptr;
            } else if (const auto* s = std::get_if<std::string>(&cell)) {
                value = *s;
            } else if (const auto* n = std::get_if<long long>(&cell)) {
                value = *n;
            } else if (format.exact) {
                value = render_cell(cell, format);
            } else {
                value = std::stod(render_cell(cell, format));
            }
            r[table.columns[i]] = std::move(value);
        }
        doc["rows"].push_back(std::move(r));
    }
    out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, OutputFormat fmt, const Table& table, const Provenance& prov,
                 const NumberFormat& format) {
    if (fmt == OutputFormat::Csv) {
        write_csv(out, table, prov, format);
    } else {
        write_json(out, table, prov, format);
    }
}

}  // namespace bibcount
