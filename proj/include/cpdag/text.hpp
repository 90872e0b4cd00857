#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"

namespace cpdag::detail {

inline void check_name(int lineno, std::string_view name) {
    if (!is_valid_vertex_name(name))
        throw ParseError(lineno, "invalid vertex name: '" + std::string(name) + "'");
}

inline std::string_view trim(std::string_view s) {
    size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) tokens.emplace_back(s.substr(start, i - start));
    }
    return tokens;
}

/// Strips a trailing '#' comment and trims; what remains is the payload.
inline std::string_view strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    return trim(line);
}

inline std::vector<std::string> content_tokens(std::string_view line) {
    return split_ws(strip_comment(line));
}

/// Calls fn(lineno, line) for each line of text, 1-based, without the
/// terminating newline.
template <typename LineFn>
void for_each_line(std::string_view text, LineFn&& fn) {
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++lineno;
        if (!(nl == std::string_view::npos && line.empty())) fn(lineno, line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

}  // namespace cpdag::detail
