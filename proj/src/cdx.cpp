#include "owa/archive/cdx.hpp"

#include <algorithm>
#include <tuple>

#include "owa/errors.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"

namespace owa::archive {

CivilTime CdxRecord::capture_time() const {
    auto t = parse_cdx_timestamp(timestamp);
    if (!t) throw MalformedCdx("timestamp", "not a valid instant: " + timestamp);
    return *t;
}

CdxRecord parse_cdx_line(std::string_view line, std::string_view format_legend) {
    auto legend = str::split(format_legend, ' ');
    auto fields = str::split(line, ' ');
    if (fields.size() != legend.size())
        throw MalformedCdx("line", "expected " + std::to_string(legend.size()) + " fields, got " +
                                       std::to_string(fields.size()));

    CdxRecord r;
    for (size_t i = 0; i < legend.size(); ++i) {
        std::string_view key = legend[i];
        std::string_view v = fields[i];
        bool absent = v == "-";
        if (key == "N") {
            if (absent || v.empty()) throw MalformedCdx("urlkey", "missing");
            for (char c : v)
                if (c >= 'A' && c <= 'Z')
                    throw MalformedCdx("urlkey", "not lowercase: " + std::string(v));
            r.surt_url = std::string(v);
        } else if (key == "b") {
            auto t = parse_cdx_timestamp(v);
            if (!t) throw MalformedCdx("timestamp", "invalid: " + std::string(v));
            r.timestamp = format_cdx_timestamp(*t);
        } else if (key == "a") {
            r.original_url = std::string(v);
        } else if (key == "m") {
            r.mime = std::string(v);
        } else if (key == "s") {
            if (absent) {
                r.status = std::nullopt;
            } else {
                long long st;
                if (!str::parse_i64(v, st) || st < 0 || st > 999)
                    throw MalformedCdx("status", "invalid: " + std::string(v));
                r.status = static_cast<int>(st);
            }
        } else if (key == "k") {
            r.digest = std::string(v);
        } else if (key == "r") {
            r.redirect = absent ? std::nullopt : std::make_optional(std::string(v));
        } else if (key == "M") {
            r.meta_flags = absent ? std::nullopt : std::make_optional(std::string(v));
        } else if (key == "S") {
            long long sz;
            if (absent || !str::parse_i64(v, sz) || sz < 0)
                throw MalformedCdx("size", "invalid: " + std::string(v));
            r.compressed_size = static_cast<uint64_t>(sz);
        } else if (key == "V") {
            long long off;
            if (absent || !str::parse_i64(v, off) || off < 0)
                throw MalformedCdx("offset", "invalid: " + std::string(v));
            r.offset = static_cast<uint64_t>(off);
        } else if (key == "g") {
            if (absent || v.empty()) throw MalformedCdx("filename", "missing");
            r.filename = std::string(v);
        } else {
            throw MalformedCdx("legend", "unknown field code: " + std::string(key));
        }
    }
    return r;
}

std::string serialize_cdx_line(const CdxRecord& r) {
    std::string out;
    out += r.surt_url;
    out += ' ';
    out += r.timestamp;
    out += ' ';
    out += r.original_url.empty() ? "-" : r.original_url;
    out += ' ';
    out += r.mime.empty() ? "-" : r.mime;
    out += ' ';
    out += r.status ? std::to_string(*r.status) : "-";
    out += ' ';
    out += r.digest.empty() ? "-" : r.digest;
    out += ' ';
    out += r.redirect ? *r.redirect : "-";
    out += ' ';
    out += r.meta_flags ? *r.meta_flags : "-";
    out += ' ';
    out += std::to_string(r.compressed_size);
    out += ' ';
    out += std::to_string(r.offset);
    out += ' ';
    out += r.filename;
    return out;
}

static auto sort_key(const CdxRecord& r) {
    return std::tie(r.surt_url, r.timestamp, r.offset, r.filename);
}

CdxIndex load_cdx_index(const std::vector<std::string>& paths) {
    CdxIndex index;
    for (const auto& path : paths) {
        std::string text = read_file_maybe_gzip(path);
        size_t start = 0;
        bool first_line = true;
        while (start < text.size()) {
            size_t nl = text.find('\n', start);
            size_t end = nl == std::string::npos ? text.size() : nl;
            std::string_view line(text.data() + start, end - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            start = end + 1;
            bool legend_header = first_line && (str::starts_with(line, " CDX ") ||
                                                str::starts_with(line, "CDX "));
            first_line = false;
            if (line.empty() || legend_header) continue;
            try {
                index.records.push_back(parse_cdx_line(line));
            } catch (const MalformedCdx&) {
                ++index.skipped_count;
            }
        }
    }
    std::sort(index.records.begin(), index.records.end(),
              [](const CdxRecord& a, const CdxRecord& b) { return sort_key(a) < sort_key(b); });
    auto dup_end = std::unique(index.records.begin(), index.records.end(),
                               [](const CdxRecord& a, const CdxRecord& b) {
                                   return sort_key(a) == sort_key(b);
                               });
    index.duplicate_count = static_cast<size_t>(index.records.end() - dup_end);
    index.records.erase(dup_end, index.records.end());
    return index;
}

CdxIndex filter_metadata(const CdxIndex& index,
                         const std::function<bool(const CdxRecord&)>& predicate) {
    CdxIndex out;
    out.skipped_count = index.skipped_count;
    for (const CdxRecord& r : index.records)
        if (predicate(r)) out.records.push_back(r);
    return out;
}

}  // namespace owa::archive
