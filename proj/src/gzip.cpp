#include "owa/util/gzip.hpp"

#include <zlib.h>

#include <stdexcept>

#include "owa/errors.hpp"

namespace owa::gz {

bool looks_gzip(std::string_view data) {
    return data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
           static_cast<unsigned char>(data[1]) == 0x8b;
}

std::string compress_member(std::string_view data) {
    z_stream zs{};
    // windowBits 15+16 selects the gzip wrapper; default header has mtime 0,
    // which keeps repeated builds byte-identical.
    if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) !=
        Z_OK)
        throw Error("deflateInit2 failed");
    std::string out;
    out.resize(deflateBound(&zs, data.size()) + 32);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    if (rc != Z_STREAM_END) {
        deflateEnd(&zs);
        throw Error("deflate failed: " + std::to_string(rc));
    }
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

MemberResult decompress_member(std::string_view file_bytes, size_t offset) {
    if (offset >= file_bytes.size()) throw Error("gzip member offset beyond end of file");
    std::string_view in = file_bytes.substr(offset);
    if (!looks_gzip(in)) throw Error("no gzip member at offset");

    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK) throw Error("inflateInit2 failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());

    MemberResult result;
    char chunk[1 << 15];
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        zs.next_out = reinterpret_cast<Bytef*>(chunk);
        zs.avail_out = sizeof(chunk);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw Error("corrupt gzip member: " + std::to_string(rc));
        }
        result.data.append(chunk, sizeof(chunk) - zs.avail_out);
    }
    result.compressed_size = in.size() - zs.avail_in;
    inflateEnd(&zs);
    return result;
}

std::string decompress_all(std::string_view file_bytes) {
    std::string out;
    size_t offset = 0;
    while (offset < file_bytes.size()) {
        MemberResult m = decompress_member(file_bytes, offset);
        out += m.data;
        offset += m.compressed_size;
    }
    return out;
}

}  // namespace owa::gz
