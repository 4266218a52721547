#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace owa::str {

inline bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

inline std::string lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(to_lower(c));
    return out;
}

inline std::string_view trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::vector<std::string_view> split(std::string_view s, char sep);

// Runs of whitespace become a single space; leading/trailing removed.
std::string collapse_whitespace(std::string_view s);

// Escapes TAB/newline/CR/backslash for the line-delimited record formats
// (news corpus, tweet stream, gazetteer, manifests).
std::string tsv_escape(std::string_view s);
std::string tsv_unescape(std::string_view s);

bool parse_i64(std::string_view s, long long& out);

// Shortest decimal form that round-trips the double.
std::string format_double(double v);

}  // namespace owa::str
