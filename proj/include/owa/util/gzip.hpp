#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace owa::gz {

bool looks_gzip(std::string_view data);

// Compress one gzip member (the WARC record framing: one member per record).
std::string compress_member(std::string_view data);

struct MemberResult {
    std::string data;        // decompressed bytes
    size_t compressed_size;  // bytes consumed from the input (member length)
};

// Inflate exactly one gzip member starting at `offset`. Throws owa::IoError
// wrapped by callers; returns nullopt-style via exception on corrupt input.
MemberResult decompress_member(std::string_view file_bytes, size_t offset);

// Inflate a whole file of concatenated gzip members.
std::string decompress_all(std::string_view file_bytes);

}  // namespace owa::gz
