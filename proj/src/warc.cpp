#include "owa/archive/warc.hpp"

#include <cstdio>

#include "owa/errors.hpp"
#include "owa/util/gzip.hpp"
#include "owa/util/strings.hpp"

namespace owa::archive {

IoStats& io_stats() {
    static IoStats stats;
    return stats;
}

const std::string* WarcRecord::warc_header(std::string_view name) const {
    for (const auto& [k, v] : warc_headers)
        if (str::lowercase(k) == str::lowercase(name)) return &v;
    return nullptr;
}

const std::string* WarcRecord::http_header(std::string_view name) const {
    if (!http_headers) return nullptr;
    for (const auto& [k, v] : *http_headers)
        if (str::lowercase(k) == str::lowercase(name)) return &v;
    return nullptr;
}

std::string WarcRecord::type() const {
    const std::string* t = warc_header("WARC-Type");
    return t ? *t : std::string{};
}

namespace {

// Reads CRLF-terminated header lines up to the blank line; returns bytes
// consumed. Bare LF is tolerated.
size_t parse_header_block(std::string_view bytes, size_t start,
                          std::vector<std::pair<std::string, std::string>>& out) {
    size_t pos = start;
    while (pos < bytes.size()) {
        size_t nl = bytes.find('\n', pos);
        if (nl == std::string_view::npos) throw MalformedWarc("unterminated header block");
        std::string_view line = bytes.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = nl + 1;
        if (line.empty()) break;  // end of headers
        size_t colon = line.find(':');
        if (colon == std::string_view::npos) throw MalformedWarc("header line without ':'");
        std::string name(str::trim(line.substr(0, colon)));
        std::string value(str::trim(line.substr(colon + 1)));
        if (name.empty()) throw MalformedWarc("empty header name");
        out.emplace_back(std::move(name), std::move(value));
    }
    return pos - start;
}

}  // namespace

WarcRecord parse_warc_record(std::string_view bytes) {
    size_t nl = bytes.find('\n');
    if (nl == std::string_view::npos) throw MalformedWarc("missing version line");
    std::string_view version = bytes.substr(0, nl);
    if (!version.empty() && version.back() == '\r') version.remove_suffix(1);
    if (!str::starts_with(version, "WARC/"))
        throw MalformedWarc("bad version line: " + std::string(version.substr(0, 16)));

    WarcRecord rec;
    size_t pos = nl + 1;
    pos += parse_header_block(bytes, pos, rec.warc_headers);
    if (!rec.warc_header("WARC-Type")) throw MalformedWarc("WARC-Type header missing");

    const std::string* len_str = rec.warc_header("Content-Length");
    if (!len_str) throw MalformedWarc("Content-Length header missing");
    long long block_len;
    if (!str::parse_i64(*len_str, block_len) || block_len < 0)
        throw MalformedWarc("bad Content-Length: " + *len_str);
    if (pos + static_cast<size_t>(block_len) > bytes.size())
        throw MalformedWarc("record block truncated");

    std::string_view block = bytes.substr(pos, static_cast<size_t>(block_len));

    const std::string* content_type = rec.warc_header("Content-Type");
    bool http_block = content_type && str::starts_with(*content_type, "application/http");
    if (http_block && !block.empty()) {
        size_t status_nl = block.find('\n');
        if (status_nl == std::string_view::npos) throw MalformedWarc("truncated HTTP block");
        std::string_view status_line = block.substr(0, status_nl);
        if (!status_line.empty() && status_line.back() == '\r') status_line.remove_suffix(1);
        if (!str::starts_with(status_line, "HTTP/")) throw MalformedWarc("bad HTTP status line");
        size_t sp = status_line.find(' ');
        if (sp == std::string_view::npos) throw MalformedWarc("bad HTTP status line");
        std::string_view code = status_line.substr(sp + 1);
        size_t sp2 = code.find(' ');
        if (sp2 != std::string_view::npos) code = code.substr(0, sp2);
        long long status;
        if (!str::parse_i64(code, status)) throw MalformedWarc("bad HTTP status code");
        rec.http_status = static_cast<int>(status);
        rec.http_headers.emplace();
        size_t hpos = status_nl + 1;
        hpos += parse_header_block(block, hpos, *rec.http_headers);
        rec.payload = std::string(block.substr(hpos));
        // Content-Length of the HTTP block, when present, bounds the body.
        if (const std::string* hl = rec.http_header("Content-Length")) {
            long long body_len;
            if (str::parse_i64(*hl, body_len) && body_len >= 0 &&
                static_cast<size_t>(body_len) <= rec.payload.size())
                rec.payload.resize(static_cast<size_t>(body_len));
        }
    } else {
        rec.payload = std::string(block);
    }
    return rec;
}

WarcRecord read_warc_record(const std::string& filename, uint64_t offset) {
    io_stats().warc_opens.fetch_add(1, std::memory_order_relaxed);

    std::FILE* f = std::fopen(filename.c_str(), "rb");
    if (!f) throw IoError(filename, "cannot open for reading");

    std::string head;
    {
        char magic[2];
        size_t n = std::fread(magic, 1, 2, f);
        head.assign(magic, n);
    }
    bool gzipped = gz::looks_gzip(head);

    if (std::fseek(f, 0, SEEK_END) != 0) {
        std::fclose(f);
        throw IoError(filename, "seek failed");
    }
    long file_len = std::ftell(f);
    if (file_len < 0 || offset >= static_cast<uint64_t>(file_len)) {
        std::fclose(f);
        throw MalformedWarc("offset beyond end of file");
    }
    std::fseek(f, static_cast<long>(offset), SEEK_SET);
    std::string bytes;
    bytes.resize(static_cast<size_t>(file_len) - offset);
    size_t got = std::fread(bytes.data(), 1, bytes.size(), f);
    std::fclose(f);
    bytes.resize(got);

    std::string record_bytes;
    if (gzipped) {
        try {
            record_bytes = gz::decompress_member(bytes, 0).data;
        } catch (const Error& e) {
            throw MalformedWarc(std::string("offset is not a gzip member start: ") + e.what());
        }
    } else {
        record_bytes = std::move(bytes);
    }

    WarcRecord rec = parse_warc_record(record_bytes);
    io_stats().warc_records_read.fetch_add(1, std::memory_order_relaxed);
    return rec;
}

std::string render_http_response(int status, const std::string& reason,
                                 const std::vector<std::pair<std::string, std::string>>& headers,
                                 std::string_view body) {
    std::string out = "HTTP/1.1 " + std::to_string(status) + " " + reason + "\r\n";
    bool has_len = false;
    for (const auto& [k, v] : headers) {
        out += k + ": " + v + "\r\n";
        if (str::lowercase(k) == "content-length") has_len = true;
    }
    if (!has_len) out += "Content-Length: " + std::to_string(body.size()) + "\r\n";
    out += "\r\n";
    out.append(body.data(), body.size());
    return out;
}

std::string render_warc_record(const WarcRecordSpec& spec) {
    std::string out = "WARC/1.0\r\n";
    out += "WARC-Type: " + spec.type + "\r\n";
    if (!spec.target_uri.empty()) out += "WARC-Target-URI: " + spec.target_uri + "\r\n";
    if (!spec.date.empty()) out += "WARC-Date: " + spec.date + "\r\n";
    if (!spec.record_id.empty()) out += "WARC-Record-ID: " + spec.record_id + "\r\n";
    if (!spec.content_type.empty()) out += "Content-Type: " + spec.content_type + "\r\n";
    out += "Content-Length: " + std::to_string(spec.block.size()) + "\r\n";
    out += "\r\n";
    out += spec.block;
    out += "\r\n\r\n";
    return out;
}

}  // namespace owa::archive
