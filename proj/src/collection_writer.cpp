#include "owa/archive/collection_writer.hpp"

#include "owa/archive/warc.hpp"
#include "owa/util/civil_time.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/gzip.hpp"
#include "owa/util/hash.hpp"
#include "owa/util/sha1.hpp"
#include "owa/util/url.hpp"

namespace owa::archive {

static std::string warc_date(const std::string& ts) {
    auto t = parse_cdx_timestamp(ts);
    return t ? format_xsd_datetime(*t) + "Z" : "1970-01-01T00:00:00Z";
}

DigestFn sha1_base32_digest() {
    return [](std::string_view data) { return sha1_base32(data); };
}

WrittenCollection write_collection(const std::string& dir, const std::string& name,
                                   const std::vector<CaptureSpec>& captures,
                                   const DigestFn& digest_fn) {
    WrittenCollection out;
    std::string warc_name = name + ".warc.gz";
    out.warc_path = dir + "/" + warc_name;
    out.cdx_path = dir + "/" + name + ".cdx";

    std::string warc_bytes;
    std::string cdx_text = " CDX " + kCdxLegend + "\n";

    for (const CaptureSpec& c : captures) {
        WarcRecordSpec spec;
        spec.target_uri = c.url;
        spec.date = warc_date(c.timestamp);
        spec.record_id = "<urn:uuid:" + hex64(fnv1a64(c.url + c.timestamp)) + ">";
        std::string digest;
        if (c.revisit) {
            spec.type = "revisit";
            spec.content_type = "";
            spec.block = "";
            digest = c.revisit_digest.empty() ? digest_fn(c.body) : c.revisit_digest;
        } else {
            spec.type = "response";
            spec.content_type = "application/http; msgtype=response";
            spec.block = render_http_response(
                c.status, c.status == 200 ? "OK" : "Error",
                {{"Content-Type", c.mime + "; charset=utf-8"}}, c.body);
            digest = digest_fn(c.body);
        }
        std::string member = gz::compress_member(render_warc_record(spec));

        CdxRecord r;
        r.surt_url = surt_from_url(c.url);
        r.timestamp = c.timestamp;
        r.original_url = c.url;
        r.mime = c.mime;
        r.status = c.status;
        r.digest = digest;
        r.compressed_size = member.size();
        r.offset = warc_bytes.size();
        r.filename = warc_name;
        cdx_text += serialize_cdx_line(r) + "\n";
        out.records.push_back(std::move(r));

        warc_bytes += member;
    }

    write_file(out.warc_path, warc_bytes);
    write_file(out.cdx_path, cdx_text);
    return out;
}

}  // namespace owa::archive
