#pragma once

#include <string>
#include <vector>

// Minimal CSV support with RFC-4180-style quoting; enough for the study
// outputs and their round-trip checks.

namespace qclmc::csv {

using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;
};

std::string escape(const std::string& field);

/// Serialize with CRLF-free line endings and deterministic byte output.
std::string write(const Table& table);

Table parse(const std::string& text);

/// Fixed round-trippable formatting for doubles (shortest exact form).
std::string format_double(double value);

void save(const Table& table, const std::string& path);
Table load(const std::string& path);

}  // namespace qclmc::csv
