#include <doctest.h>

#include "owa/archive/collection_writer.hpp"
#include "owa/archive/warc.hpp"
#include "owa/errors.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/sha1.hpp"
#include "support/temp.hpp"

using namespace owa;
using archive::CaptureSpec;

namespace {

std::vector<CaptureSpec> fixture_captures() {
    std::string html_a = "<html><title>Page A</title><body><p>first capture body</p></body></html>";
    std::string html_b = "<html><title>Page B</title><body><p>other page body</p></body></html>";
    return {
        {"http://a.example.org/", "20120101120000", 200, "text/html", html_a, false, ""},
        {"http://a.example.org/", "20120201120000", 200, "text/html", html_a, true,
         sha1_base32(html_a)},  // revisit of the first capture
        {"http://b.example.org/", "20120301120000", 200, "text/html", html_b, false, ""},
    };
}

}  // namespace

TEST_CASE("read_warc_record returns the stored response") {
    test::TempDir dir;
    auto coll = archive::write_collection(dir.path.string(), "fix", fixture_captures());

    auto rec = archive::read_warc_record(coll.warc_path, coll.records[0].offset);
    CHECK(rec.type() == "response");
    REQUIRE(rec.http_status);
    CHECK(*rec.http_status == 200);
    CHECK(rec.payload.find("first capture body") != std::string::npos);
    REQUIRE(rec.warc_header("WARC-Target-URI"));
    CHECK(*rec.warc_header("WARC-Target-URI") == "http://a.example.org/");

    SUBCASE("payload length equals http content-length") {
        REQUIRE(rec.http_header("Content-Length"));
        CHECK(std::to_string(rec.payload.size()) == *rec.http_header("Content-Length"));
    }
}

TEST_CASE("offset mid-record is malformed") {
    test::TempDir dir;
    auto coll = archive::write_collection(dir.path.string(), "fix", fixture_captures());
    CHECK_THROWS_AS(archive::read_warc_record(coll.warc_path, coll.records[0].offset + 7),
                    MalformedWarc);
    CHECK_THROWS_AS(archive::read_warc_record(coll.warc_path, 1u << 30), MalformedWarc);
    CHECK_THROWS_AS(archive::read_warc_record(dir.file("missing.warc.gz"), 0), IoError);
}

TEST_CASE("revisit records have empty payload and intact headers") {
    test::TempDir dir;
    auto coll = archive::write_collection(dir.path.string(), "fix", fixture_captures());
    auto rec = archive::read_warc_record(coll.warc_path, coll.records[1].offset);
    CHECK(rec.type() == "revisit");
    CHECK(rec.payload.empty());
    CHECK_FALSE(rec.http_status);
    REQUIRE(rec.warc_header("WARC-Target-URI"));
}

TEST_CASE("every cdx pointer resolves and digests close the loop") {
    test::TempDir dir;
    auto coll = archive::write_collection(dir.path.string(), "fix", fixture_captures());
    auto index = archive::load_cdx_index({coll.cdx_path});
    REQUIRE(index.size() == 3);

    for (const auto& r : index.records) {
        auto rec = archive::read_warc_record(dir.file(r.filename), r.offset);
        if (rec.type() == "response") {
            CHECK(sha1_base32(rec.payload) == r.digest);
        } else {
            CHECK(rec.type() == "revisit");  // digest refers to the duplicated content
        }
        CHECK(r.offset + r.compressed_size <=
              std::filesystem::file_size(dir.file(r.filename)));
    }
}

TEST_CASE("metadata-only traversal opens zero warc handles") {
    test::TempDir dir;
    auto coll = archive::write_collection(dir.path.string(), "fix", fixture_captures());

    archive::io_stats().reset();
    auto index = archive::load_cdx_index({coll.cdx_path});
    auto filtered = archive::filter_metadata(index, [](const archive::CdxRecord& r) {
        return r.status && *r.status == 200 && r.mime == "text/html";
    });
    size_t total = 0;
    for (const auto& r : filtered.records) total += r.compressed_size;
    CHECK(total > 0);
    CHECK(archive::io_stats().warc_opens.load() == 0);

    archive::read_warc_record(coll.warc_path, 0);
    CHECK(archive::io_stats().warc_opens.load() == 1);
}

TEST_CASE("uncompressed warc files read by raw offset") {
    test::TempDir dir;
    std::string body = "<html><body>plain store</body></html>";
    archive::WarcRecordSpec spec;
    spec.type = "response";
    spec.target_uri = "http://plain.example.org/";
    spec.date = "2012-01-01T12:00:00Z";
    spec.content_type = "application/http; msgtype=response";
    spec.block = archive::render_http_response(200, "OK", {{"Content-Type", "text/html"}}, body);
    std::string r0 = archive::render_warc_record(spec);
    spec.target_uri = "http://plain.example.org/two";
    std::string r1 = archive::render_warc_record(spec);
    write_file(dir.file("plain.warc"), r0 + r1);

    auto rec = archive::read_warc_record(dir.file("plain.warc"), r0.size());
    REQUIRE(rec.warc_header("WARC-Target-URI"));
    CHECK(*rec.warc_header("WARC-Target-URI") == "http://plain.example.org/two");
    CHECK(rec.payload == body);
}
