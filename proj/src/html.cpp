#include "owa/extract/html.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "owa/util/strings.hpp"
#include "owa/util/url.hpp"

namespace owa::extract {

namespace {

void append_utf8_cp(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(char(cp));
    } else if (cp < 0x800) {
        out.push_back(char(0xC0 | (cp >> 6)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(char(0xE0 | (cp >> 12)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(char(0xF0 | (cp >> 18)));
        out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    }
}

// Windows-1252 0x80..0x9F block; 0 entries fall back to U+FFFD.
const uint16_t kCp1252[32] = {0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
                              0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
                              0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
                              0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

std::string normalize_charset(std::string_view s) {
    std::string out;
    for (char c : s) {
        c = str::to_lower(c);
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out.push_back(c);
    }
    return out;
}

std::string decode_latin(std::string_view bytes, bool cp1252) {
    std::string out;
    out.reserve(bytes.size());
    for (unsigned char c : bytes) {
        if (c < 0x80) {
            out.push_back(char(c));
        } else if (cp1252 && c < 0xA0) {
            uint16_t cp = kCp1252[c - 0x80];
            append_utf8_cp(out, cp ? cp : 0xFFFD);
        } else {
            append_utf8_cp(out, c);
        }
    }
    return out;
}

std::string sanitize_utf8(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    size_t i = 0;
    while (i < bytes.size()) {
        unsigned char c = bytes[i];
        size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        bool ok = len > 0 && i + len <= bytes.size();
        for (size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
        if (ok) {
            out.append(bytes.substr(i, len));
            i += len;
        } else {
            append_utf8_cp(out, 0xFFFD);
            ++i;
        }
    }
    return out;
}

// charset from a <meta charset=..> or http-equiv content within the head.
std::string sniff_meta_charset(std::string_view html) {
    std::string lower = str::lowercase(html.substr(0, std::min<size_t>(html.size(), 4096)));
    size_t pos = lower.find("charset");
    if (pos == std::string::npos) return {};
    pos += 7;
    while (pos < lower.size() && (lower[pos] == ' ' || lower[pos] == '=')) ++pos;
    if (pos < lower.size() && (lower[pos] == '"' || lower[pos] == '\'')) ++pos;
    size_t end = pos;
    while (end < lower.size() && (isalnum(static_cast<unsigned char>(lower[end])) ||
                                  lower[end] == '-' || lower[end] == '_'))
        ++end;
    return lower.substr(pos, end - pos);
}

struct Entity {
    const char* name;
    uint32_t cp;
};
const Entity kEntities[] = {{"amp", '&'},   {"lt", '<'},    {"gt", '>'},   {"quot", '"'},
                            {"apos", '\''}, {"nbsp", ' '},  {"ndash", 0x2013},
                            {"mdash", 0x2014}, {"hellip", 0x2026}, {"copy", 0xA9}};

void decode_entity(std::string& out, std::string_view name) {
    if (name.size() >= 2 && name[0] == '#') {
        uint32_t cp = 0;
        bool ok = false;
        if (name[1] == 'x' || name[1] == 'X') {
            for (size_t i = 2; i < name.size(); ++i) {
                char c = str::to_lower(name[i]);
                if (c >= '0' && c <= '9') {
                    cp = cp * 16 + (c - '0');
                } else if (c >= 'a' && c <= 'f') {
                    cp = cp * 16 + (c - 'a' + 10);
                } else {
                    out.append("&").append(name).append(";");
                    return;
                }
                ok = true;
            }
        } else {
            for (size_t i = 1; i < name.size(); ++i) {
                if (name[i] < '0' || name[i] > '9') {
                    out.append("&").append(name).append(";");
                    return;
                }
                cp = cp * 10 + (name[i] - '0');
                ok = true;
            }
        }
        if (ok && cp > 0 && cp <= 0x10FFFF) append_utf8_cp(out, cp);
        return;
    }
    for (const Entity& e : kEntities) {
        if (name == e.name) {
            append_utf8_cp(out, e.cp);
            return;
        }
    }
    out.append("&").append(name).append(";");  // unknown entity kept verbatim
}

void append_text(std::string& out, std::string_view raw) {
    size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (c == '&') {
            size_t semi = raw.find(';', i + 1);
            if (semi != std::string_view::npos && semi - i <= 10) {
                decode_entity(out, raw.substr(i + 1, semi - i - 1));
                i = semi + 1;
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
}

// Minimal tolerant tag scanner: emits text runs and tags.
class HtmlScanner {
  public:
    explicit HtmlScanner(std::string_view html) : html_(html) {}

    // fn_text(text_run), fn_tag(name_lower, closing, attrs_raw)
    template <class FText, class FTag>
    void scan(FText&& fn_text, FTag&& fn_tag) {
        size_t i = 0;
        while (i < html_.size()) {
            size_t lt = html_.find('<', i);
            if (lt == std::string_view::npos) {
                fn_text(html_.substr(i));
                break;
            }
            if (lt > i) fn_text(html_.substr(i, lt - i));
            if (str::starts_with(html_.substr(lt), "<!--")) {
                size_t end = html_.find("-->", lt + 4);
                i = end == std::string_view::npos ? html_.size() : end + 3;
                continue;
            }
            if (lt + 1 < html_.size() && (html_[lt + 1] == '!' || html_[lt + 1] == '?')) {
                size_t end = html_.find('>', lt);
                i = end == std::string_view::npos ? html_.size() : end + 1;
                continue;
            }
            size_t gt = html_.find('>', lt);
            if (gt == std::string_view::npos) {
                fn_text(html_.substr(lt));
                break;
            }
            std::string_view inner = html_.substr(lt + 1, gt - lt - 1);
            bool closing = !inner.empty() && inner[0] == '/';
            if (closing) inner.remove_prefix(1);
            size_t name_end = 0;
            while (name_end < inner.size() && !str::is_space(inner[name_end]) &&
                   inner[name_end] != '/')
                ++name_end;
            std::string name = str::lowercase(inner.substr(0, name_end));
            std::string_view attrs = inner.substr(name_end);
            if (name.empty()) {  // stray '<>' or '< ' treated as text
                fn_text(html_.substr(lt, gt - lt + 1));
                i = gt + 1;
                continue;
            }
            fn_tag(name, closing, attrs);
            i = gt + 1;
            // script/style/noscript: raw text until the matching close tag
            if (!closing && (name == "script" || name == "style" || name == "noscript")) {
                std::string close = "</" + name;
                size_t end = find_ci(html_, close, i);
                if (end == std::string_view::npos) {
                    i = html_.size();
                } else {
                    size_t close_gt = html_.find('>', end);
                    fn_tag(name, true, {});
                    i = close_gt == std::string_view::npos ? html_.size() : close_gt + 1;
                }
            }
        }
    }

  private:
    static size_t find_ci(std::string_view hay, std::string_view needle, size_t from) {
        if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
        for (size_t i = from; i + needle.size() <= hay.size(); ++i) {
            bool hit = true;
            for (size_t k = 0; hit && k < needle.size(); ++k)
                hit = str::to_lower(hay[i + k]) == str::to_lower(needle[k]);
            if (hit) return i;
        }
        return std::string_view::npos;
    }

    std::string_view html_;
};

std::string attr_value(std::string_view attrs, std::string_view wanted) {
    size_t i = 0;
    while (i < attrs.size()) {
        while (i < attrs.size() && (str::is_space(attrs[i]) || attrs[i] == '/')) ++i;
        size_t name_start = i;
        while (i < attrs.size() && !str::is_space(attrs[i]) && attrs[i] != '=' && attrs[i] != '/')
            ++i;
        std::string name = str::lowercase(attrs.substr(name_start, i - name_start));
        while (i < attrs.size() && str::is_space(attrs[i])) ++i;
        std::string value;
        if (i < attrs.size() && attrs[i] == '=') {
            ++i;
            while (i < attrs.size() && str::is_space(attrs[i])) ++i;
            if (i < attrs.size() && (attrs[i] == '"' || attrs[i] == '\'')) {
                char q = attrs[i++];
                size_t end = attrs.find(q, i);
                if (end == std::string_view::npos) end = attrs.size();
                value = std::string(attrs.substr(i, end - i));
                i = end == attrs.size() ? end : end + 1;
            } else {
                size_t start = i;
                while (i < attrs.size() && !str::is_space(attrs[i])) ++i;
                value = std::string(attrs.substr(start, i - start));
            }
        }
        if (!name.empty() && name == wanted) return value;
        if (i == name_start) ++i;  // safety against stalls
    }
    return {};
}

size_t count_words(std::string_view text) {
    size_t words = 0;
    bool in_word = false;
    for (char c : text) {
        if (str::is_space(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return words;
}

const std::set<std::string_view> kBlockTags = {
    "p",    "div",     "h1",      "h2",   "h3",    "h4",   "h5",     "h6",  "li",   "ul",
    "ol",   "td",      "th",      "tr",   "table", "pre",  "blockquote",    "article",
    "section", "main", "header",  "footer", "aside", "br", "hr",     "form", "dl",  "dt",
    "dd",   "body",    "figure",  "figcaption"};

}  // namespace

std::string decode_to_utf8(std::string_view bytes, std::string_view encoding_hint) {
    std::string charset = normalize_charset(encoding_hint);
    if (charset.empty()) charset = normalize_charset(sniff_meta_charset(bytes));
    if (charset == "iso88591" || charset == "latin1") return decode_latin(bytes, false);
    if (charset == "windows1252" || charset == "cp1252") return decode_latin(bytes, true);
    // utf8, usascii, unknown: treat as UTF-8 with lossy replacement
    return sanitize_utf8(bytes);
}

std::optional<std::string> extract_title(std::string_view html, std::string_view encoding_hint) {
    std::string utf8 = decode_to_utf8(html, encoding_hint);
    std::optional<std::string> title;
    bool in_title = false;
    bool done = false;
    std::string acc;
    HtmlScanner(utf8).scan(
        [&](std::string_view text) {
            if (in_title && !done) append_text(acc, text);
        },
        [&](const std::string& name, bool closing, std::string_view) {
            if (done) return;
            if (name == "title") {
                if (!closing && !in_title && !title) {
                    in_title = true;
                } else if (closing && in_title) {
                    in_title = false;
                    done = true;
                    title = str::collapse_whitespace(acc);
                }
            }
        });
    if (!done && in_title) title = str::collapse_whitespace(acc);  // unclosed <title>
    return title;
}

std::vector<std::string> extract_links(std::string_view html, std::string_view base_url,
                                       std::string_view encoding_hint) {
    std::string utf8 = decode_to_utf8(html, encoding_hint);
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    HtmlScanner(utf8).scan(
        [](std::string_view) {},
        [&](const std::string& name, bool closing, std::string_view attrs) {
            if (closing || name != "a") return;
            std::string href = attr_value(attrs, "href");
            std::string decoded;
            append_text(decoded, href);  // hrefs may carry &amp;
            decoded = std::string(str::trim(decoded));
            if (decoded.empty() || decoded[0] == '#') return;  // fragment-only
            auto abs = resolve_url(base_url, decoded);
            if (!abs) return;
            auto parsed = Url::parse(*abs);
            if (!parsed || (parsed->scheme != "http" && parsed->scheme != "https")) return;
            if (seen.insert(*abs).second) out.push_back(*abs);
        });
    return out;
}

std::string extract_main_text(std::string_view html, std::string_view encoding_hint,
                              const MainTextOptions& options) {
    std::string utf8 = decode_to_utf8(html, encoding_hint);

    struct Block {
        std::string text;
        size_t words = 0;
        size_t link_words = 0;
    };
    std::vector<Block> blocks;
    std::string acc;
    std::string link_acc;
    int skip_depth = 0;  // inside script/style/noscript/nav
    int anchor_depth = 0;
    bool saw_block_tag = false;

    auto flush = [&]() {
        std::string text = str::collapse_whitespace(acc);
        if (!text.empty()) {
            Block b;
            b.text = std::move(text);
            b.words = count_words(b.text);
            b.link_words = count_words(str::collapse_whitespace(link_acc));
            blocks.push_back(std::move(b));
        }
        acc.clear();
        link_acc.clear();
    };

    HtmlScanner(utf8).scan(
        [&](std::string_view text) {
            if (skip_depth > 0) return;
            append_text(acc, text);
            if (anchor_depth > 0) append_text(link_acc, text);
        },
        [&](const std::string& name, bool closing, std::string_view) {
            // <title> renders in the chrome, not the page, so it is skipped
            // here along with the non-visible elements.
            if (name == "script" || name == "style" || name == "noscript" || name == "nav" ||
                name == "title") {
                flush();
                skip_depth += closing ? -1 : 1;
                if (skip_depth < 0) skip_depth = 0;
                return;
            }
            if (skip_depth > 0) return;
            if (name == "a") {
                anchor_depth += closing ? -1 : 1;
                if (anchor_depth < 0) anchor_depth = 0;
                return;
            }
            if (kBlockTags.count(name)) {
                saw_block_tag = true;
                flush();
            }
        });
    flush();

    if (blocks.empty()) return {};
    // A bare text document is a single block: it is the main content.
    if (!saw_block_tag && blocks.size() == 1) return blocks[0].text;

    std::string out;
    for (const Block& b : blocks) {
        if (b.words < options.min_words) continue;
        double ratio = b.words == 0 ? 0.0 : double(b.link_words) / double(b.words);
        if (ratio >= options.max_link_ratio) continue;
        if (!out.empty()) out += "\n";
        out += b.text;
    }
    return out;
}

PageContent extract_page(std::string_view html, std::string_view base_url,
                         std::string_view encoding_hint) {
    PageContent pc;
    pc.title = extract_title(html, encoding_hint);
    pc.links = extract_links(html, base_url, encoding_hint);
    pc.main_text = extract_main_text(html, encoding_hint);
    return pc;
}

}  // namespace owa::extract
