#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace owa {

// Just enough of RFC 3986 to resolve archive link targets.
struct Url {
    std::string scheme;     // lowercase, no ':'
    std::string authority;  // host[:port], empty when absent
    bool has_authority = false;
    std::string path;
    std::string query;  // without '?'
    bool has_query = false;
    std::string fragment;  // without '#'
    bool has_fragment = false;

    static std::optional<Url> parse(std::string_view s);
    std::string to_string() const;
    bool is_absolute() const { return !scheme.empty(); }
};

// RFC 3986 section 5 reference resolution. Returns nullopt when the result
// has no scheme (base was relative).
std::optional<std::string> resolve_url(std::string_view base, std::string_view reference);

// SURT form used as the CDX sort key: reversed host, lowercase, no scheme.
// "http://www.Example.org/A/b?q=1" -> "org,example)/a/b?q=1"
std::string surt_from_url(std::string_view url);

}  // namespace owa
