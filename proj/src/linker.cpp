#include "owa/link/linker.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

#include "owa/errors.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"

namespace owa::link {

namespace {

bool word_char(unsigned char c) {
    if (c >= 0x80) return true;  // UTF-8 tail/lead bytes stay inside tokens
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        if (!word_char(text[i])) {
            ++i;
            continue;
        }
        size_t begin = i;
        std::string norm;
        while (i < text.size() && word_char(text[i])) {
            norm.push_back(str::to_lower(text[i]));
            ++i;
        }
        out.push_back({begin, i, std::move(norm)});
    }
    return out;
}

std::string normalize_surface(std::string_view s) {
    std::string out;
    for (const Token& t : tokenize(s)) {
        if (!out.empty()) out.push_back(' ');
        out += t.norm;
    }
    return out;
}

const std::vector<Candidate>* Gazetteer::lookup(std::string_view normalized_surface) const {
    auto it = entries.find(std::string(normalized_surface));
    return it == entries.end() ? nullptr : &it->second;
}

bool Gazetteer::has(std::string_view normalized_surface, std::string_view uri) const {
    const auto* c = lookup(normalized_surface);
    if (!c) return false;
    return std::any_of(c->begin(), c->end(), [&](const Candidate& x) { return x.uri == uri; });
}

Gazetteer build_gazetteer_text(std::string_view text) {
    Gazetteer gaz;
    size_t start = 0;
    while (start < text.size()) {
        size_t nl = text.find('\n', start);
        size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line(text.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        start = end + 1;
        if (line.empty() || line[0] == '#') continue;

        auto cols = str::split(line, '\t');
        if (cols.size() < 3 || cols.size() > 4) {
            ++gaz.skipped_rows;
            continue;
        }
        std::string surface = normalize_surface(str::tsv_unescape(cols[0]));
        std::string uri(str::trim(cols[1]));
        double prior = -1;
        {
            auto [ptr, ec] = std::from_chars(cols[2].data(), cols[2].data() + cols[2].size(), prior);
            if (ec != std::errc() || ptr != cols[2].data() + cols[2].size()) prior = -1;
        }
        bool bad_uri = uri.empty();
        for (unsigned char c : uri)
            if (c <= 0x20 || c == '<' || c == '>' || c == '"') bad_uri = true;
        if (surface.empty() || bad_uri || !(prior > 0.0) || prior > 1.0) {
            ++gaz.skipped_rows;
            continue;
        }

        auto& cands = gaz.entries[surface];
        auto it = std::find_if(cands.begin(), cands.end(),
                               [&](const Candidate& c) { return c.uri == uri; });
        if (it != cands.end()) {
            it->prior = std::max(it->prior, prior);  // duplicate (surface, uri): max wins
        } else {
            cands.push_back({uri, prior});
        }

        if (cols.size() == 4 && !cols[3].empty()) {
            auto& kws = gaz.uri_keywords[uri];
            for (std::string_view kw : str::split(cols[3], ',')) {
                std::string norm = normalize_surface(str::tsv_unescape(kw));
                if (!norm.empty()) kws.push_back(std::move(norm));
            }
        }
    }
    for (auto& [surface, cands] : gaz.entries) {
        std::sort(cands.begin(), cands.end(),
                  [](const Candidate& a, const Candidate& b) { return a.uri < b.uri; });
        size_t grams = 1 + static_cast<size_t>(std::count(surface.begin(), surface.end(), ' '));
        gaz.max_gram = std::max(gaz.max_gram, grams);
    }
    for (auto& [uri, kws] : gaz.uri_keywords) {
        std::sort(kws.begin(), kws.end());
        kws.erase(std::unique(kws.begin(), kws.end()), kws.end());
    }
    return gaz;
}

Gazetteer build_gazetteer(const std::string& path) {
    return build_gazetteer_text(read_file_maybe_gzip(path));
}

namespace {

// Number of the URI's keywords whose token sequence occurs inside
// tokens[window_begin, window_end).
size_t keyword_overlap(const Gazetteer& gaz, const std::string& uri,
                       const std::vector<Token>& tokens, size_t window_begin,
                       size_t window_end) {
    auto it = gaz.uri_keywords.find(uri);
    if (it == gaz.uri_keywords.end()) return 0;
    size_t count = 0;
    for (const std::string& kw : it->second) {
        auto kw_tokens = str::split(kw, ' ');
        bool found = false;
        for (size_t i = window_begin; !found && i + kw_tokens.size() <= window_end; ++i) {
            bool hit = true;
            for (size_t k = 0; hit && k < kw_tokens.size(); ++k)
                hit = tokens[i + k].norm == kw_tokens[k];
            found = hit;
        }
        if (found) ++count;
    }
    return count;
}

double score_at(const Gazetteer& gaz, double prior, const std::string& uri,
                const std::vector<Token>& tokens, size_t span_begin, size_t span_end) {
    size_t wbegin = span_begin >= 50 ? span_begin - 50 : 0;
    size_t wend = std::min(tokens.size(), span_end + 50);
    size_t overlap = keyword_overlap(gaz, uri, tokens, wbegin, wend);
    return std::log(prior) + std::log1p(static_cast<double>(overlap));
}

}  // namespace

double score(const Gazetteer& gaz, std::string_view surface, std::string_view uri,
             std::string_view context_text) {
    std::string key = normalize_surface(surface);
    const auto* cands = gaz.lookup(key);
    const Candidate* hit = nullptr;
    if (cands)
        for (const Candidate& c : *cands)
            if (c.uri == uri) hit = &c;
    if (!hit) throw UnknownCandidate(std::string(surface), std::string(uri));

    std::vector<Token> tokens = tokenize(context_text);
    auto key_tokens = str::split(key, ' ');
    size_t span_begin = 0, span_end = 0;
    for (size_t i = 0; i + key_tokens.size() <= tokens.size(); ++i) {
        bool match = true;
        for (size_t k = 0; match && k < key_tokens.size(); ++k)
            match = tokens[i + k].norm == key_tokens[k];
        if (match) {
            span_begin = i;
            span_end = i + key_tokens.size();
            break;
        }
    }
    return score_at(gaz, hit->prior, hit->uri, tokens, span_begin, span_end);
}

LinkResult link(std::string_view text, const Gazetteer& gaz, double threshold,
                int64_t timeout_ms) {
    LinkResult result;
    if (gaz.max_gram == 0) return result;

    using Clock = std::chrono::steady_clock;
    auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);

    std::vector<Token> tokens = tokenize(text);
    std::string key;
    size_t i = 0;
    while (i < tokens.size()) {
        if (timeout_ms > 0 && Clock::now() >= deadline) {
            result.truncated = true;
            break;
        }
        size_t longest = std::min(gaz.max_gram, tokens.size() - i);
        bool consumed = false;
        for (size_t len = longest; len >= 1; --len) {
            key.clear();
            for (size_t k = 0; k < len; ++k) {
                if (k) key.push_back(' ');
                key += tokens[i + k].norm;
            }
            const auto* cands = gaz.lookup(key);
            if (!cands) continue;

            // Disambiguation: max score, ties to the smallest URI. The span
            // is consumed either way so the segmentation does not depend on
            // the threshold.
            const Candidate* best = nullptr;
            double best_score = 0;
            for (const Candidate& c : *cands) {
                double s = score_at(gaz, c.prior, c.uri, tokens, i, i + len);
                if (!best || s > best_score) {
                    best = &c;
                    best_score = s;
                }
            }
            if (best && best_score >= threshold) {
                EntityMention m;
                m.position = tokens[i].begin;
                m.surface = std::string(text.substr(m.position, tokens[i + len - 1].end - m.position));
                m.confidence = best_score;
                m.uri = best->uri;
                result.mentions.push_back(std::move(m));
            }
            i += len;
            consumed = true;
            break;
        }
        if (!consumed) ++i;
    }
    return result;
}

}  // namespace owa::link
