#include "rcap/text.hpp"

#include <charconv>
#include <fstream>
#include <iterator>

#include "rcap/error.hpp"

namespace rcap {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    if (text.empty()) return lines;
    std::size_t start = 0;
    std::size_t line_no = 1;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (line.find('\r') != std::string_view::npos) {
            throw ParseError(line_no, "carriage return found; files must use LF line endings");
        }
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
        ++line_no;
        if (start == text.size()) break;
    }
    return lines;
}

std::vector<long long> parse_int_fields(std::string_view line, std::size_t line_no) {
    std::vector<long long> out;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t'; };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        long long value = 0;
        const char* first = line.data() + i;
        const char* last = line.data() + j;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw ParseError(line_no, "expected an integer, found '" + std::string(line.substr(i, j - i)) + "'");
        }
        out.push_back(value);
        i = j;
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return text;
}

}  // namespace rcap
