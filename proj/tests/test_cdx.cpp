#include <doctest.h>

#include <random>

#include "owa/archive/cdx.hpp"
#include "owa/errors.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/gzip.hpp"
#include "support/temp.hpp"

using namespace owa;
using archive::CdxRecord;

TEST_CASE("parse_cdx_line populates every legend field") {
    auto r = archive::parse_cdx_line(
        "org,example)/ 20120101120000 http://example.org/ text/html 200 AAAB - - 512 0 c.warc.gz");
    CHECK(r.surt_url == "org,example)/");
    CHECK(r.timestamp == "20120101120000");
    CHECK(r.original_url == "http://example.org/");
    CHECK(r.mime == "text/html");
    REQUIRE(r.status);
    CHECK(*r.status == 200);
    CHECK(r.digest == "AAAB");
    CHECK_FALSE(r.redirect);
    CHECK_FALSE(r.meta_flags);
    CHECK(r.compressed_size == 512);
    CHECK(r.offset == 0);
    CHECK(r.filename == "c.warc.gz");
}

TEST_CASE("dash maps to absent status") {
    auto r = archive::parse_cdx_line(
        "org,example)/ 20120101120000 http://example.org/ text/html - AAAB - - 512 0 c.warc.gz");
    CHECK_FALSE(r.status);
}

TEST_CASE("wrong field count is malformed") {
    CHECK_THROWS_AS(archive::parse_cdx_line(
                        "org,example)/ 20120101120000 http://example.org/ text/html 200 AAAB - - 512 0"),
                    MalformedCdx);
    CHECK_THROWS_AS(archive::parse_cdx_line("one two"), MalformedCdx);
    CHECK_THROWS_AS(
        archive::parse_cdx_line(
            "org,example)/ 2012AB01120000 http://example.org/ text/html 200 AAAB - - 512 0 c.warc.gz"),
        MalformedCdx);
    CHECK_THROWS_AS(
        archive::parse_cdx_line(
            "ORG,example)/ 20120101120000 http://example.org/ text/html 200 AAAB - - 512 0 c.warc.gz"),
        MalformedCdx);
}

TEST_CASE("round trip reproduces canonical lines byte for byte") {
    std::mt19937_64 rng(11);
    const char* surts[] = {"org,example)/", "org,example)/page", "com,news)/a?q=1"};
    const char* mimes[] = {"text/html", "image/png", "-"};
    for (int i = 0; i < 500; ++i) {
        std::string line = std::string(surts[rng() % 3]) + " 2012010112" +
                           std::to_string(10 + rng() % 50) + "00 http://example.org/x " +
                           mimes[rng() % 3] + " " + (rng() % 2 ? "200" : "-") + " DIGEST" +
                           std::to_string(rng() % 9) + " " + (rng() % 2 ? "http://r/" : "-") +
                           " - " + std::to_string(rng() % 10000) + " " +
                           std::to_string(rng() % 100000) + " file" +
                           std::to_string(rng() % 3) + ".warc.gz";
        CdxRecord rec = archive::parse_cdx_line(line);
        CHECK(archive::serialize_cdx_line(rec) == line);
    }
}

TEST_CASE("load merges, sorts, skips and dedups") {
    test::TempDir dir;
    write_file(dir.file("a.cdx"),
               " CDX N b a m s k r M S V g\n"
               "org,zeta)/ 20120101120000 http://zeta.org/ text/html 200 D1 - - 10 0 a.warc.gz\n"
               "org,alpha)/ 20120101120000 http://alpha.org/ text/html 200 D2 - - 10 0 a.warc.gz\n"
               "org,alpha)/ 20110101120000 http://alpha.org/ text/html 200 D3 - - 10 40 a.warc.gz\n");
    write_file(dir.file("b.cdx"),
               "org,beta)/ 20120101120000 http://beta.org/ text/html 200 D4 - - 10 0 b.warc.gz\n"
               "not a valid line\n"
               "org,beta)/ 20130101120000 http://beta.org/ text/html 200 D5 - - 10 40 b.warc.gz\n");

    auto index = archive::load_cdx_index({dir.file("a.cdx"), dir.file("b.cdx")});
    CHECK(index.size() == 5);
    CHECK(index.skipped_count == 1);
    CHECK(index.records[0].surt_url == "org,alpha)/");
    CHECK(index.records[0].timestamp == "20110101120000");
    CHECK(index.records[1].timestamp == "20120101120000");
    CHECK(index.records[2].surt_url == "org,beta)/");
    CHECK(index.records[4].surt_url == "org,zeta)/");

    SUBCASE("gzip input works the same") {
        write_file(dir.file("c.cdx.gz"),
                   gz::compress_member("org,gz)/ 20120101120000 http://gz.org/ text/html 200 D6 "
                                       "- - 10 0 c.warc.gz\n"));
        auto with_gz = archive::load_cdx_index({dir.file("a.cdx"), dir.file("c.cdx.gz")});
        CHECK(with_gz.size() == 4);
    }
}

TEST_CASE("empty path list yields empty index") {
    auto index = archive::load_cdx_index({});
    CHECK(index.empty());
    CHECK(index.skipped_count == 0);
}

TEST_CASE("unreadable file raises Io") {
    CHECK_THROWS_AS(archive::load_cdx_index({"/nonexistent/nowhere.cdx"}), IoError);
}

TEST_CASE("filter_metadata preserves order and does no payload io") {
    test::TempDir dir;
    write_file(dir.file("a.cdx"),
               "org,a)/ 20120101120000 http://a.org/ text/html 200 D1 - - 512 0 a.warc.gz\n"
               "org,a)/ 20120102120000 http://a.org/ image/png 200 D2 - - 512 600 a.warc.gz\n"
               "org,a)/ 20120103120000 http://a.org/ text/html 404 D3 - - 512 1200 a.warc.gz\n"
               "org,a)/ 20120104120000 http://a.org/ text/html 200 D4 - - 204800 1800 a.warc.gz\n");
    auto index = archive::load_cdx_index({dir.file("a.cdx")});

    auto html_ok = archive::filter_metadata(index, [](const CdxRecord& r) {
        return r.status && *r.status == 200 && r.mime == "text/html";
    });
    CHECK(html_ok.size() == 2);

    auto small = archive::filter_metadata(index, [](const CdxRecord& r) {
        return r.compressed_size < 100 * 1024;
    });
    CHECK(small.size() == 3);
    for (const auto& r : small.records) CHECK(r.compressed_size < 102400);

    auto none = archive::filter_metadata(index, [](const CdxRecord&) { return false; });
    CHECK(none.empty());
}
