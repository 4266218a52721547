#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "owa/archive/cdx.hpp"

namespace owa::archive {

// Payload digest for CDX rows; default is SHA-1/base32 (the Wayback
// convention). Readers treat digests opaquely, so swapping the algorithm
// only requires regenerating the collection.
using DigestFn = std::function<std::string(std::string_view)>;
DigestFn sha1_base32_digest();

// One capture to be written into a WARC/CDX pair. Revisit captures carry no
// body; their CDX digest points at the content they duplicate.
struct CaptureSpec {
    std::string url;
    std::string timestamp;  // 14-digit YYYYMMDDhhmmss
    int status = 200;
    std::string mime = "text/html";
    std::string body;
    bool revisit = false;
    std::string revisit_digest;  // digest recorded for revisit rows
};

struct WrittenCollection {
    std::string warc_path;
    std::string cdx_path;
    std::vector<CdxRecord> records;
};

// Writes <name>.warc.gz (one gzip member per record) and <name>.cdx with
// matching offsets, sizes and digests.
WrittenCollection write_collection(const std::string& dir, const std::string& name,
                                   const std::vector<CaptureSpec>& captures,
                                   const DigestFn& digest = sha1_base32_digest());

}  // namespace owa::archive
