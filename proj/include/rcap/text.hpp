#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rcap {

/// Splits on LF. A single trailing LF does not produce an extra empty line.
/// Carriage returns are rejected with a ParseError.
std::vector<std::string_view> split_lines(std::string_view text);

/// Whitespace-separated base-10 integers; ParseError (at `line_no`) otherwise.
std::vector<long long> parse_int_fields(std::string_view line, std::size_t line_no);

std::string read_text_file(const std::string& path);

}  // namespace rcap
