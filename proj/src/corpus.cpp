#include "owa/extract/corpus.hpp"

#include <map>
#include <unordered_set>

#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"

namespace owa::extract {

namespace {

using FieldMap = std::map<std::string, std::string, std::less<>>;

bool parse_fields(std::string_view line, FieldMap& out) {
    for (std::string_view part : str::split(line, '\t')) {
        size_t eq = part.find('=');
        if (eq == std::string_view::npos || eq == 0) return false;
        out[std::string(part.substr(0, eq))] = str::tsv_unescape(part.substr(eq + 1));
    }
    return true;
}

const std::string* field(const FieldMap& m, std::string_view key) {
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
}

template <class T, class ParseLine>
CorpusResult<T> parse_lines(std::string_view text, ParseLine&& parse_line) {
    CorpusResult<T> result;
    std::unordered_set<std::string> ids;
    size_t start = 0;
    while (start < text.size()) {
        size_t nl = text.find('\n', start);
        size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line(text.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        start = end + 1;
        if (line.empty()) continue;
        T rec;
        if (parse_line(line, rec) && ids.insert(rec.id).second) {
            result.records.push_back(std::move(rec));
        } else {
            ++result.skipped_count;
        }
    }
    return result;
}

}  // namespace

CorpusResult<NewsArticle> parse_news_corpus_text(std::string_view text) {
    return parse_lines<NewsArticle>(text, [](std::string_view line, NewsArticle& a) {
        FieldMap m;
        if (!parse_fields(line, m)) return false;
        const std::string *id = field(m, "id"), *url = field(m, "url"), *title = field(m, "title"),
                          *date = field(m, "date"), *body = field(m, "body");
        if (!id || id->empty() || !url || !title || !date || !body) return false;
        auto d = parse_xsd_date(*date);
        if (!d) return false;
        a.id = *id;
        a.url = *url;
        a.title = *title;
        a.publication_date = *d;
        a.body = *body;
        return true;
    });
}

CorpusResult<NewsArticle> parse_news_corpus(const std::string& path) {
    return parse_news_corpus_text(read_file_maybe_gzip(path));
}

CorpusResult<TweetRecord> parse_tweet_stream_text(std::string_view text) {
    return parse_lines<TweetRecord>(text, [](std::string_view line, TweetRecord& t) {
        FieldMap m;
        if (!parse_fields(line, m)) return false;
        const std::string *id = field(m, "id"), *body = field(m, "text"),
                          *created = field(m, "created_at"), *fav = field(m, "favorite_count"),
                          *rt = field(m, "retweet_count"), *screen = field(m, "screen_name");
        if (!id || id->empty() || !body || !created || !fav || !rt || !screen) return false;
        auto d = parse_xsd_datetime(*created);
        if (!d) return false;
        long long fav_n, rt_n;
        if (!str::parse_i64(*fav, fav_n) || !str::parse_i64(*rt, rt_n)) return false;
        if (fav_n < 0 || rt_n < 0) return false;
        t.id = *id;
        t.text = *body;
        t.created_at = *d;
        t.favorite_count = fav_n;
        t.retweet_count = rt_n;
        t.screen_name = *screen;
        return true;
    });
}

CorpusResult<TweetRecord> parse_tweet_stream(const std::string& path) {
    return parse_tweet_stream_text(read_file_maybe_gzip(path));
}

std::string render_news_line(const NewsArticle& a) {
    std::string out;
    out += "id=" + str::tsv_escape(a.id);
    out += "\turl=" + str::tsv_escape(a.url);
    out += "\ttitle=" + str::tsv_escape(a.title);
    out += "\tdate=" + format_xsd_date(a.publication_date);
    out += "\tbody=" + str::tsv_escape(a.body);
    return out;
}

std::string render_tweet_line(const TweetRecord& t) {
    std::string out;
    out += "id=" + str::tsv_escape(t.id);
    out += "\ttext=" + str::tsv_escape(t.text);
    out += "\tcreated_at=" + format_xsd_datetime(t.created_at);
    out += "\tfavorite_count=" + std::to_string(t.favorite_count);
    out += "\tretweet_count=" + std::to_string(t.retweet_count);
    out += "\tscreen_name=" + str::tsv_escape(t.screen_name);
    return out;
}

}  // namespace owa::extract
