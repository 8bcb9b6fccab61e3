#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orgflow::csv {

struct Row {
    std::size_t line = 0; ///< 1-based line where the record starts
    std::vector<std::string> fields;
};

/// RFC 4180 records with '"' quoting; blank lines are skipped and a trailing
/// '\r' is dropped. Throws std::runtime_error on an unterminated quote.
std::vector<Row> read(std::string_view text);

/// Quotes the field when it holds a comma, quote or line break.
std::string escape(std::string_view field);

/// Joins escaped fields with commas and terminates with '\n'.
std::string line(const std::vector<std::string>& fields);

} // namespace orgflow::csv
