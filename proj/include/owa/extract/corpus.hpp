#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "owa/util/civil_time.hpp"

namespace owa::extract {

// Line-delimited record formats: one record per line, TAB-separated
// key=value fields, values escaped with \t \n \r \\. Field names below are
// part of the fixture contract.

struct NewsArticle {
    std::string id;
    std::string url;
    std::string title;
    CivilTime publication_date;  // date key, YYYY-MM-DD
    std::string body;
};

struct TweetRecord {
    std::string id;
    std::string text;
    CivilTime created_at;  // created_at key, ISO-8601
    int64_t favorite_count = 0;
    int64_t retweet_count = 0;
    std::string screen_name;
};

template <class T>
struct CorpusResult {
    std::vector<T> records;
    size_t skipped_count = 0;
};

// Fields: id, url, title, date, body. Invalid records (bad date, missing
// field, duplicate id) are counted and skipped.
CorpusResult<NewsArticle> parse_news_corpus(const std::string& path);
CorpusResult<NewsArticle> parse_news_corpus_text(std::string_view text);

// Fields: id, text, created_at, favorite_count, retweet_count, screen_name.
// Negative counts violate the invariants and are skipped.
CorpusResult<TweetRecord> parse_tweet_stream(const std::string& path);
CorpusResult<TweetRecord> parse_tweet_stream_text(std::string_view text);

std::string render_news_line(const NewsArticle& a);
std::string render_tweet_line(const TweetRecord& t);

}  // namespace owa::extract
