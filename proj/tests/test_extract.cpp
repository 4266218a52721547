#include <doctest.h>

#include <random>

#include "owa/extract/corpus.hpp"
#include "owa/extract/html.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"
#include "owa/util/url.hpp"
#include "support/temp.hpp"

using namespace owa;
using namespace owa::extract;

TEST_CASE("extract_title collapses whitespace and takes the first element") {
    CHECK(*extract_title("<html><title> A  B </title><body></body></html>") == "A B");
    CHECK_FALSE(extract_title("<html><body><p>no title</p></body></html>"));
    CHECK(*extract_title("<title>first</title><title>second</title>") == "first");
    CHECK(*extract_title("<TITLE>upper &amp; case</TITLE>") == "upper & case");
}

TEST_CASE("extract_links resolves, filters and dedups") {
    std::string html =
        "<a href=\"/a\">one</a>"
        "<a href=\"#sec\">frag</a>"
        "<a href=\"/a\">dup</a>"
        "<a href=\"b/c\">rel</a>"
        "<a href=\"mailto:x@y\">mail</a>"
        "<a href=\"https://other.net/z\">abs</a>";
    auto links = extract_links(html, "http://x.org/p/");
    REQUIRE(links.size() == 3);
    CHECK(links[0] == "http://x.org/a");
    CHECK(links[1] == "http://x.org/p/b/c");
    CHECK(links[2] == "https://other.net/z");
}

namespace {

const char* kArticleFixture =
    "<html><head><title>Fixture</title></head><body>"
    "<nav><a href=\"/\">home</a> <a href=\"/about\">about</a> <a href=\"/contact\">contact</a></nav>"
    "<div><a href=\"/x\">short menu link row here</a></div>"
    "<p>The first paragraph of the article carries more than ten words of plain prose text.</p>"
    "<p>The second paragraph also has enough words to clear the density threshold easily today.</p>"
    "<p>A third and final paragraph closes the piece with yet more ordinary running text.</p>"
    "<footer>contact us</footer></body></html>";

}  // namespace

TEST_CASE("extract_main_text keeps article paragraphs and drops boilerplate") {
    // hand-labelled fixture: the three <p> blocks are content, nav and the
    // link-only div are boilerplate
    std::string text = extract_main_text(kArticleFixture);
    CHECK(text.find("first paragraph of the article") != std::string::npos);
    CHECK(text.find("second paragraph") != std::string::npos);
    CHECK(text.find("final paragraph closes") != std::string::npos);
    CHECK(text.find("home") == std::string::npos);
    CHECK(text.find("about") == std::string::npos);
    CHECK(text.find("short menu link row") == std::string::npos);
    CHECK(text.find("contact us") == std::string::npos);

    size_t nl_count = std::count(text.begin(), text.end(), '\n');
    CHECK(nl_count == 2);  // three merged blocks
}

TEST_CASE("pure text body returns entire visible text") {
    CHECK(extract_main_text("just a few plain words") == "just a few plain words");
    CHECK(extract_main_text("") == "");
    CHECK(extract_main_text("<html><body></body></html>") == "");
}

TEST_CASE("main text is a subsequence of visible text") {
    // oracle: strip every tag, drop whitespace (fixtures are entity-free)
    auto visible_nonspace = [](std::string_view html) {
        std::string out;
        bool in_tag = false;
        for (char c : html) {
            if (c == '<') in_tag = true;
            else if (c == '>') in_tag = false;
            else if (!in_tag && !str::is_space(c)) out.push_back(c);
        }
        return out;
    };
    auto strip_space = [](std::string_view s) {
        std::string out;
        for (char c : s)
            if (!str::is_space(c)) out.push_back(c);
        return out;
    };

    const char* docs[] = {kArticleFixture,
                          "<p>Ten words are needed here to keep this block alive.</p>",
                          "<p>short</p><div>also short</div>"};
    for (const char* doc : docs) {
        std::string main_text = strip_space(extract_main_text(doc));
        std::string visible = visible_nonspace(doc);
        // subsequence check
        size_t vi = 0;
        bool ok = true;
        for (char c : main_text) {
            while (vi < visible.size() && visible[vi] != c) ++vi;
            if (vi == visible.size()) {
                ok = false;
                break;
            }
            ++vi;
        }
        CHECK(ok);
    }
}

TEST_CASE("extractors are deterministic") {
    for (int i = 0; i < 3; ++i) {
        CHECK(extract_main_text(kArticleFixture) == extract_main_text(kArticleFixture));
        CHECK(extract_links(kArticleFixture, "http://x.org/") ==
              extract_links(kArticleFixture, "http://x.org/"));
    }
}

TEST_CASE("charset hints are honored") {
    std::string latin = "caf\xE9";  // 'café' in latin-1
    CHECK(decode_to_utf8(latin, "iso-8859-1") == "caf\xC3\xA9");
    CHECK(decode_to_utf8("plain ascii", "") == "plain ascii");
    std::string bad_utf8 = std::string("ok\xFF") + "end";
    std::string repaired = decode_to_utf8(bad_utf8, "utf-8");
    CHECK(repaired.find("ok") == 0);
    CHECK(repaired.find("end") != std::string::npos);
    std::string meta =
        "<html><head><meta charset=\"windows-1252\"></head><body>\x93quoted\x94</body></html>";
    std::string decoded = decode_to_utf8(meta);
    CHECK(decoded.find("\xE2\x80\x9Cquoted\xE2\x80\x9D") != std::string::npos);
}

TEST_CASE("news corpus parses valid lines and skips invalid ones") {
    test::TempDir dir;
    write_file(dir.file("news.tsv"),
               "id=a1\turl=http://nyt.test/a1\ttitle=One\tdate=1989-06-15\tbody=Text one.\n"
               "id=a2\turl=http://nyt.test/a2\ttitle=Two\tdate=1989-06-16\tbody=Text two.\n"
               "id=a3\turl=http://nyt.test/a3\ttitle=NoDate\tbody=missing date\n"
               "id=a4\turl=http://nyt.test/a4\ttitle=Four\tdate=1990-01-02\tbody=Text four.\n");
    auto result = parse_news_corpus(dir.file("news.tsv"));
    CHECK(result.records.size() == 3);
    CHECK(result.skipped_count == 1);
    CHECK(result.records[0].id == "a1");
    CHECK(result.records[0].publication_date.year == 1989);
    CHECK(format_xsd_date(result.records[2].publication_date) == "1990-01-02");
}

TEST_CASE("tweet stream enforces invariants") {
    test::TempDir dir;
    write_file(dir.file("tweets.tsv"),
               "id=t1\ttext=hello world\tcreated_at=2016-06-02T10:00:00Z\tfavorite_count=3\t"
               "retweet_count=51\tscreen_name=nytimes\n"
               "id=t2\ttext=bad\tcreated_at=2016-06-02T10:00:00Z\tfavorite_count=1\t"
               "retweet_count=-1\tscreen_name=nytimes\n");
    auto result = parse_tweet_stream(dir.file("tweets.tsv"));
    CHECK(result.records.size() == 1);
    CHECK(result.skipped_count == 1);
    CHECK(result.records[0].retweet_count == 51);
    CHECK(format_xsd_datetime(result.records[0].created_at) == "2016-06-02T10:00:00");
}

TEST_CASE("empty corpus file yields empty list") {
    test::TempDir dir;
    write_file(dir.file("empty.tsv"), "");
    CHECK(parse_news_corpus(dir.file("empty.tsv")).records.empty());
    CHECK(parse_tweet_stream(dir.file("empty.tsv")).records.empty());
}


TEST_CASE("duplicate corpus ids are skipped") {
    auto result = parse_news_corpus_text(
        "id=a1\turl=http://n/1\ttitle=T\tdate=1990-01-01\tbody=B\n"
        "id=a1\turl=http://n/1b\ttitle=T2\tdate=1990-01-02\tbody=B2\n");
    CHECK(result.records.size() == 1);
    CHECK(result.skipped_count == 1);
    CHECK(result.records[0].url == "http://n/1");
}

TEST_CASE("corpus lines round trip") {
    NewsArticle a{"a9", "http://nyt.test/a9", "Title with\ttab", *parse_xsd_date("1989-06-15"),
                  "Body line\nsecond"};
    auto parsed = parse_news_corpus_text(render_news_line(a));
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].title == "Title with\ttab");
    CHECK(parsed.records[0].body == "Body line\nsecond");
}
