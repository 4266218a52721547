#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace owa::link {

// Token over the original byte string: [begin, end) plus the lowercased
// form used for matching. Splits on ASCII whitespace and punctuation.
struct Token {
    size_t begin = 0;
    size_t end = 0;
    std::string norm;
};
std::vector<Token> tokenize(std::string_view text);

// Lowercased, tokenizer-normalized key ("New  York-based" -> "new york based").
std::string normalize_surface(std::string_view s);

struct Candidate {
    std::string uri;
    double prior = 0.0;  // in (0, 1]
};

// Dictionary from normalized surface forms to candidate entities with prior
// probabilities, plus per-URI context keywords for the overlap score.
struct Gazetteer {
    std::unordered_map<std::string, std::vector<Candidate>> entries;
    std::unordered_map<std::string, std::vector<std::string>> uri_keywords;  // sorted, unique
    size_t max_gram = 0;  // longest surface form in tokens
    size_t skipped_rows = 0;

    const std::vector<Candidate>* lookup(std::string_view normalized_surface) const;
    bool has(std::string_view normalized_surface, std::string_view uri) const;
};

// File rows: surface<TAB>uri<TAB>prior[<TAB>keyword,keyword,...]. Malformed
// rows are skipped with a counter; duplicate (surface, uri) rows merge by
// max prior; keyword sets merge per URI.
Gazetteer build_gazetteer(const std::string& path);
Gazetteer build_gazetteer_text(std::string_view text);

struct EntityMention {
    std::string surface;  // original text slice (oae:detectedAs)
    size_t position = 0;  // byte offset (oae:position)
    double confidence = 0.0;
    std::string uri;
};

struct LinkResult {
    std::vector<EntityMention> mentions;  // sorted by position, non-overlapping
    bool truncated = false;               // per-document timeout hit
};

// ln(prior) + ln(1 + overlap); overlap counts the URI's context keywords
// present in a +-50-token window around the mention. Throws UnknownCandidate
// when (surface, uri) is not a gazetteer entry.
double score(const Gazetteer& gaz, std::string_view surface, std::string_view uri,
             std::string_view context_text);

inline constexpr double kDefaultThreshold = -4.0;      // web / tweet layers
inline constexpr int64_t kDefaultTimeoutMs = 10'000;   // per document

// Longest-match-first greedy scan, left to right, no overlaps. The matched
// span is consumed whether or not the best candidate clears the threshold,
// so the segmentation is threshold-independent (mention sets shrink
// monotonically as the threshold rises). timeout_ms <= 0 disables the clock.
LinkResult link(std::string_view text, const Gazetteer& gaz, double threshold = kDefaultThreshold,
                int64_t timeout_ms = kDefaultTimeoutMs);

}  // namespace owa::link
