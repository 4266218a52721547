#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace owa::archive {

// Counts WARC file opens so the two-phase loading discipline (metadata
// passes touch no payloads) is a testable property.
struct IoStats {
    std::atomic<uint64_t> warc_opens{0};
    std::atomic<uint64_t> warc_records_read{0};
    void reset() {
        warc_opens = 0;
        warc_records_read = 0;
    }
};
IoStats& io_stats();

struct WarcRecord {
    std::vector<std::pair<std::string, std::string>> warc_headers;  // ordered
    std::optional<int> http_status;
    std::optional<std::vector<std::pair<std::string, std::string>>> http_headers;
    std::string payload;  // HTTP body for response records, raw block otherwise

    const std::string* warc_header(std::string_view name) const;
    const std::string* http_header(std::string_view name) const;
    std::string type() const;  // WARC-Type value, "" when absent
};

// Reads exactly one record. `offset` must be the start of a gzip member in
// member-per-record files, or a record start in uncompressed files. Throws
// Io / MalformedWarc.
WarcRecord read_warc_record(const std::string& filename, uint64_t offset);

// Parses one record out of decompressed bytes (version line, CRLF headers,
// blank line, Content-Length payload).
WarcRecord parse_warc_record(std::string_view bytes);

// Fixture/builder side: renders a record (and its gzip member framing).
struct WarcRecordSpec {
    std::string type;          // response | revisit | resource | ...
    std::string target_uri;
    std::string date;          // ISO-8601
    std::string record_id;
    std::string content_type;  // of the block
    std::string block;         // full block bytes (e.g. HTTP response)
};
std::string render_warc_record(const WarcRecordSpec& spec);
std::string render_http_response(int status, const std::string& reason,
                                 const std::vector<std::pair<std::string, std::string>>& headers,
                                 std::string_view body);

}  // namespace owa::archive
