#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace joinmi::csv {

struct Document {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Parses RFC-4180 style text: quoted fields, doubled quotes, CRLF or LF
/// line endings. Short rows are padded with empty cells.
Document parse(std::string_view text, char delimiter = ',');

/// Reads and parses a file. Throws DataError if it cannot be opened or has
/// no header row.
Document read_file(const std::filesystem::path& path, char delimiter = ',');

/// Parses a decimal or scientific-notation number. Leading '+' and
/// surrounding spaces are accepted; "inf"/"nan" spellings are not numbers.
/// Out-of-range magnitudes parse to +/-infinity so callers can reject them.
std::optional<double> parse_number(std::string_view text);

/// Quotes a field when it contains the delimiter, a quote or a line break.
std::string escape(std::string_view field, char delimiter = ',');

std::string join_row(const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace joinmi::csv
