#include "moran/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace moran {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_field(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string meta_line(const TableMeta& meta) {
    std::string line = "# ";
    line += kToolName;
    line += " ";
    line += kToolVersion;
    line += " command=";
    line += meta.command;
    for (const auto& [key, value] : meta.config) {
        line += " ";
        line += key;
        line += "=";
        line += value;
    }
    return line;
}

/// Numeric-looking fields become JSON numbers, the rest stay strings
/// (exact fractions like "121/49" contain '/' and stay strings).
nlohmann::ordered_json json_value(const std::string& field) {
    if (field.empty()) return field;
    char* end = nullptr;
    const double as_double = std::strtod(field.c_str(), &end);
    if (end == field.c_str() + field.size()) {
        if (field.find_first_of(".eE") == std::string::npos &&
            field.size() <= 18) {
            try {
                return std::stoll(field);
            } catch (const std::exception&) {
            }
        }
        return as_double;
    }
    return field;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string render_csv(const Table& table) {
    std::string out = meta_line(table.meta);
    out += "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out += ",";
        out += csv_field(table.header[i]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ",";
            out += csv_field(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["meta"]["tool"] = kToolName;
    doc["meta"]["version"] = kToolVersion;
    doc["meta"]["command"] = table.meta.command;
    for (const auto& [key, value] : table.meta.config) doc["meta"][key] = value;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i)
            obj[table.header[i]] = json_value(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::string render_table(const Table& table, const std::string& format) {
    if (format == "csv") return render_csv(table);
    if (format == "json") return render_json(table);
    throw std::invalid_argument("unknown output format: " + format);
}

void save_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    out.flush();
    if (!out) {
        out.close();
        std::remove(path.c_str());
        throw std::runtime_error("failed while writing output file: " + path);
    }
}

}  // namespace moran
