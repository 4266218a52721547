#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace owa::extract {

struct PageContent {
    std::optional<std::string> title;
    std::vector<std::string> links;  // absolute, document order, deduplicated
    std::string main_text;
};

// Decodes archive payload bytes to UTF-8. The hint (usually the HTTP
// Content-Type charset) wins over <meta>; default is UTF-8 with lossy
// replacement. Understands utf-8, iso-8859-1/latin-1, windows-1252, ascii.
std::string decode_to_utf8(std::string_view bytes, std::string_view encoding_hint = {});

// Text of the first <title> element, whitespace-collapsed; nullopt if none.
std::optional<std::string> extract_title(std::string_view html,
                                         std::string_view encoding_hint = {});

// href targets of anchors resolved against base_url; http(s) only,
// fragment-only references dropped, duplicates removed, order preserved.
std::vector<std::string> extract_links(std::string_view html, std::string_view base_url,
                                       std::string_view encoding_hint = {});

// Boilerplate removal knobs: a block survives with at least `min_words`
// words and a link-text ratio below `max_link_ratio`.
struct MainTextOptions {
    size_t min_words = 10;
    double max_link_ratio = 0.33;
};

// Block-level text-density heuristic: segment on block tags, drop short and
// link-heavy blocks, join survivors. A document with no block markup is a
// single block and is returned whole. script/style/noscript/nav content is
// never included. Deterministic.
std::string extract_main_text(std::string_view html, std::string_view encoding_hint = {},
                              const MainTextOptions& options = {});

PageContent extract_page(std::string_view html, std::string_view base_url,
                         std::string_view encoding_hint = {});

}  // namespace owa::extract
