#include <doctest.h>

#include "owa/util/civil_time.hpp"
#include "owa/util/gzip.hpp"
#include "owa/util/sha1.hpp"
#include "owa/util/strings.hpp"
#include "owa/util/url.hpp"

using namespace owa;

TEST_CASE("sha1 base32 matches known vectors") {
    CHECK(sha1_base32("abc") == "VGMT4NSHA2AWVOR6EVYXQUGCNSONBWE5");
    CHECK(sha1_base32("") == "3I42H3S6NNFQ2MSVX7XZKYAYSCX5QBYJ");
    CHECK(sha1_base32("<html><body>Hello</body></html>") ==
          "3FVPQ3BBVZ22AV4CLU3NH5BBJNKSOTA4");
}

TEST_CASE("gzip member round trip") {
    std::string data = "WARC/1.0\r\npayload payload payload\r\n";
    std::string gz1 = gz::compress_member(data);
    std::string gz2 = gz::compress_member("second member");
    std::string file = gz1 + gz2;

    auto m0 = gz::decompress_member(file, 0);
    CHECK(m0.data == data);
    CHECK(m0.compressed_size == gz1.size());
    auto m1 = gz::decompress_member(file, gz1.size());
    CHECK(m1.data == "second member");
    CHECK(gz::decompress_all(file) == data + "second member");
    CHECK_THROWS(gz::decompress_member(file, 3));  // mid-member
}

TEST_CASE("gzip output is deterministic") {
    std::string data(5000, 'x');
    for (size_t i = 0; i < data.size(); i += 7) data[i] = char('a' + (i % 23));
    CHECK(gz::compress_member(data) == gz::compress_member(data));
}

TEST_CASE("cdx timestamps pad and validate") {
    auto t = parse_cdx_timestamp("20120101120000");
    REQUIRE(t);
    CHECK(t->year == 2012);
    CHECK(t->hour == 12);
    CHECK(format_cdx_timestamp(*t) == "20120101120000");

    auto padded = parse_cdx_timestamp("201201011200");  // 12 digits
    REQUIRE(padded);
    CHECK(format_cdx_timestamp(*padded) == "20120101120000");

    CHECK_FALSE(parse_cdx_timestamp("2012"));        // pads to month 00
    CHECK_FALSE(parse_cdx_timestamp("20121301000000"));  // month 13
    CHECK_FALSE(parse_cdx_timestamp("20120230000000"));  // Feb 30
    CHECK(parse_cdx_timestamp("20120229000000"));        // leap year
    CHECK_FALSE(parse_cdx_timestamp("20110229000000"));  // not a leap year
}

TEST_CASE("xsd datetime parsing normalizes zones") {
    auto t = parse_xsd_datetime("2016-06-02T10:30:00Z");
    REQUIRE(t);
    CHECK(format_xsd_datetime(*t) == "2016-06-02T10:30:00");

    auto shifted = parse_xsd_datetime("2016-01-01T01:30:00+02:00");
    REQUIRE(shifted);
    CHECK(format_xsd_datetime(*shifted) == "2015-12-31T23:30:00");

    auto date_only = parse_xsd_datetime("2016-06-01");
    REQUIRE(date_only);
    CHECK(format_xsd_datetime(*date_only) == "2016-06-01T00:00:00");

    auto d = parse_xsd_date("1989-06-15");
    REQUIRE(d);
    CHECK(d->date_only);
    CHECK(format_xsd_date(*d) == "1989-06-15");
    CHECK_FALSE(parse_xsd_date("1989-6-15"));
}

TEST_CASE("epoch seconds is monotone in civil order") {
    CivilTime a = *parse_xsd_datetime("1989-06-01T00:00:00");
    CivilTime b = *parse_xsd_datetime("1989-06-30T23:59:59");
    CivilTime c = *parse_xsd_datetime("1990-01-01T00:00:00");
    CHECK(a.epoch_seconds() < b.epoch_seconds());
    CHECK(b.epoch_seconds() < c.epoch_seconds());
    CHECK(CivilTime{1970, 1, 1, 0, 0, 0, false}.epoch_seconds() == 0);
}

TEST_CASE("url resolution follows rfc 3986") {
    CHECK(*resolve_url("http://x.org/p/", "/a") == "http://x.org/a");
    CHECK(*resolve_url("http://x.org/p/", "a") == "http://x.org/p/a");
    CHECK(*resolve_url("http://x.org/p/q", "../r") == "http://x.org/r");
    CHECK(*resolve_url("http://x.org/p/", "http://y.net/z") == "http://y.net/z");
    CHECK(*resolve_url("http://x.org/p/", "//y.net/z") == "http://y.net/z");
    CHECK(*resolve_url("http://x.org/a/b?q=1", "?q=2") == "http://x.org/a/b?q=2");
    CHECK(*resolve_url("http://x.org/", "mailto:a@b") == "mailto:a@b");
}

TEST_CASE("surt reverses host") {
    CHECK(surt_from_url("http://www.Example.org/A/b?q=1") == "org,example)/a/b?q=1");
    CHECK(surt_from_url("https://news.site.com/") == "com,site,news)/");
}

TEST_CASE("string helpers") {
    CHECK(str::collapse_whitespace("  A \t B\n") == "A B");
    CHECK(str::tsv_unescape(str::tsv_escape("a\tb\nc\\d")) == "a\tb\nc\\d");
    CHECK(str::format_double(0.25) == "0.25");
    CHECK(str::format_double(-4.0) == "-4");
}
