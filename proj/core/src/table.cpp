#include "tdanorms/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "tdanorms/error.hpp"

namespace tdanorms {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return csv_escape(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                // Round-trip through the 6-digit text so CSV and JSON agree.
                std::string text = format_number(v);
                double rounded = 0.0;
                std::from_chars(text.data(), text.data() + text.size(), rounded);
                return rounded;
            } else {
                return v;
            }
        },
        cell);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw Error(ErrorCode::LengthMismatch, "table row has " + std::to_string(row.size()) + " cells, expected " +
                                                   std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    // snprintf honours LC_NUMERIC; force the decimal point.
    for (char* p = buf; *p; ++p) {
        if (*p == ',') *p = '.';
    }
    return buf;
}

std::string render_table(const Table& table, TableFormat format) {
    if (format == TableFormat::csv) {
        std::string out;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += csv_escape(table.columns[c]);
        }
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += csv_cell(row[c]);
            }
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void emit_table(const Table& table, TableFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out << render_table(table, format);
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace tdanorms
