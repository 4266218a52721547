#include "owa/util/fs.hpp"

#include <cstdio>

#include "owa/errors.hpp"
#include "owa/util/gzip.hpp"

namespace owa {

std::string read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError(path, "cannot open for reading");
    std::string out;
    char buf[1 << 16];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, n);
    bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad) throw IoError(path, "read failed");
    return out;
}

std::string read_file_maybe_gzip(const std::string& path) {
    std::string raw = read_file(path);
    if (gz::looks_gzip(raw)) {
        try {
            return gz::decompress_all(raw);
        } catch (const Error& e) {
            throw IoError(path, e.what());
        }
    }
    return raw;
}

void write_file(const std::string& path, std::string_view contents) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError(path, "cannot open for writing");
    size_t written = std::fwrite(contents.data(), 1, contents.size(), f);
    bool bad = written != contents.size() || std::fclose(f) != 0;
    if (bad) throw IoError(path, "write failed");
}

}  // namespace owa
