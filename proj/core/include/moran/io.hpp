// =============================================================================
// io.hpp — Machine-readable result tables.
//
// Every output file starts with a reproducibility record (tool version,
// full command configuration, seed).  CSV: a single `#`-prefixed meta
// line, then an RFC-4180 header row and rows with `.` decimal separator
// and 17-significant-digit floats (round-trip exact).  JSON: one object
// {"meta": {...}, "rows": [...]} with exact fractions rendered as "p/q"
// strings.  Files are written whole or not at all.
// =============================================================================
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace moran {

inline constexpr const char* kToolName = "moransweep";
inline constexpr const char* kToolVersion = "0.1.0";

struct TableMeta {
    std::string command;                                       // e.g. "simulate"
    std::vector<std::pair<std::string, std::string>> config;   // flag -> value, seed included
};

struct Table {
    TableMeta meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Shortest decimal rendering that round-trips a double ("%.17g").
std::string format_double(double value);

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

/// "csv" or "json" by name; throws std::invalid_argument otherwise.
std::string render_table(const Table& table, const std::string& format);

/// Write the full content, removing any partial file on failure.
void save_text_file(const std::string& path, const std::string& content);

}  // namespace moran
