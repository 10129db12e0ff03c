#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tdanorms::detail {

// Splits one CSV record. Supports double-quoted fields with `""` escapes;
// surrounding whitespace and a trailing carriage return are trimmed.
std::vector<std::string> split_csv_line(std::string_view line);

// Splits content into non-blank lines.
std::vector<std::string_view> csv_lines(std::string_view content);

bool parse_double(std::string_view text, double& out);

std::string read_file(const std::string& path);

}  // namespace tdanorms::detail
