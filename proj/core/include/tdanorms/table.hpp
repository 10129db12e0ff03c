#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace tdanorms {

// Empty cells are written as blank CSV fields and JSON null.
using Cell = std::variant<std::monostate, std::string, double, long long>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class TableFormat { csv, json };

// Numbers use 6 significant digits and a `.` decimal point regardless of
// locale; NaN and infinities print as nan/inf (CSV) or null (JSON).
std::string format_number(double value);

std::string render_table(const Table& table, TableFormat format);

// Writes the rendered table; throws IoError.
void emit_table(const Table& table, TableFormat format, const std::filesystem::path& path);

}  // namespace tdanorms
