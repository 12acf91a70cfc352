#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bibcount/rational.hpp"

namespace bibcount {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Empty, text, integer or exact number.
using Cell = std::variant<std::monostate, std::string, long long, Rational>;

template <Scalar T>
Cell number_cell(const T& v) {
    return to_rational(v);
}

template <Scalar T>
Cell number_cell(const std::optional<T>& v) {
    return v ? Cell(to_rational(*v)) : Cell(std::monostate{});
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view text);

struct NumberFormat {
    int digits = 6;
    /// Emit exact "p/q" strings instead of rounded decimals.
    bool exact = false;
};

/// Emitted ahead of every report: tool version, command, corpus digest and
/// the effective options.
struct Provenance {
    std::string command;
    std::string input_name;
    std::string input_sha256;
    std::vector<std::pair<std::string, std::string>> options;
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// RFC 4180 quoting when needed.
std::string csv_field(std::string_view text);

std::string render_cell(const Cell& cell, const NumberFormat& format);

/// Provenance as leading '#' comment lines, then a header row and the rows.
void write_csv(std::ostream& out, const Table& table, const Provenance& provenance, const NumberFormat& format);

/// {"provenance": {...}, "columns": [...], "rows": [{...}, ...]}; numbers are
/// the same rounded values the CSV carries, or strings in exact mode.
void write_json(std::ostream& out, const Table& table, const Provenance& provenance, const NumberFormat& format);

void write_table(std::ostream& out, OutputFormat fmt, const Table& table, const Provenance& provenance,
                 const NumberFormat& format);

}  // namespace bibcount
