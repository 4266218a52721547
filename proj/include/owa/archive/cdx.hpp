#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owa/util/civil_time.hpp"

namespace owa::archive {

// One capture-metadata line of a CDX index. The legend is the 11-field
// Wayback form "N b a m s k r M S V g":
//   urlkey timestamp original mime status digest redirect meta size offset filename
inline const std::string kCdxLegend = "N b a m s k r M S V g";

struct CdxRecord {
    std::string surt_url;   // N, lowercase canonicalized key
    std::string timestamp;  // b, 14-digit YYYYMMDDhhmmss after padding
    std::string original_url;             // a
    std::string mime;                     // m
    std::optional<int> status;            // s, "-" = absent
    std::string digest;                   // k
    std::optional<std::string> redirect;  // r
    std::optional<std::string> meta_flags;  // M
    uint64_t compressed_size = 0;           // S
    uint64_t offset = 0;                    // V
    std::string filename;                   // g

    CivilTime capture_time() const;
};

// Serializes back to the legend's field order, "-" for absents. For a
// well-formed canonical line this reproduces the input byte for byte.
std::string serialize_cdx_line(const CdxRecord& r);

// Throws MalformedCdx on wrong field count, unparseable timestamp/integers,
// or a non-lowercase urlkey.
CdxRecord parse_cdx_line(std::string_view line, std::string_view format_legend = kCdxLegend);

struct CdxIndex {
    std::vector<CdxRecord> records;  // sorted by (surt_url, timestamp, offset, filename)
    size_t skipped_count = 0;        // malformed lines across all inputs
    size_t duplicate_count = 0;      // exact (surt, ts, offset, filename) repeats collapsed

    size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

// Merges any number of plain or gzip CDX files. A leading " CDX ..." legend
// header line is recognized and skipped; malformed lines are counted, not
// fatal. Performs no WARC I/O.
CdxIndex load_cdx_index(const std::vector<std::string>& paths);

// Order-preserving subset; metadata only, by construction.
CdxIndex filter_metadata(const CdxIndex& index,
                         const std::function<bool(const CdxRecord&)>& predicate);

}  // namespace owa::archive
