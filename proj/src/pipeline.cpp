#include "owa/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include "owa/archive/cdx.hpp"
#include "owa/archive/warc.hpp"
#include "owa/errors.hpp"
#include "owa/extract/corpus.hpp"
#include "owa/extract/html.hpp"
#include "owa/layer/builder.hpp"
#include "owa/link/linker.hpp"
#include "owa/rdf/n3.hpp"
#include "owa/rdf/vocab.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/gzip.hpp"
#include "owa/util/strings.hpp"

namespace owa::pipeline {

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || std::filesystem::path(path).is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / path).string();
}

}  // namespace

BuildConfig BuildConfig::parse(const std::string& text, const std::string& base_dir) {
    BuildConfig c;
    size_t start = 0;
    size_t line_no = 0;
    while (start < text.size()) {
        size_t nl = text.find('\n', start);
        size_t end = nl == std::string::npos ? text.size() : nl;
        std::string_view line = str::trim(std::string_view(text).substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        std::string key(str::trim(line.substr(0, eq)));
        std::string value(str::trim(line.substr(eq + 1)));

        if (key == "kind") c.kind = value;
        else if (key == "cdx") c.cdx_paths.push_back(resolve(base_dir, value));
        else if (key == "warc_dir") c.warc_dir = resolve(base_dir, value);
        else if (key == "input") c.input_path = resolve(base_dir, value);
        else if (key == "gazetteer") c.gazetteer_path = resolve(base_dir, value);
        else if (key == "threshold") {
            try {
                c.threshold = std::stod(value);
            } catch (...) {
                throw ConfigError("threshold: not a number: " + value);
            }
        } else if (key == "timeout_ms") {
            long long v;
            if (!str::parse_i64(value, v) || v < 0) throw ConfigError("timeout_ms: bad value");
            c.timeout_ms = v;
        } else if (key == "size_cap") {
            long long v;
            if (!str::parse_i64(value, v) || v < 0) throw ConfigError("size_cap: bad value");
            c.size_cap = static_cast<uint64_t>(v);
        } else if (key == "version_url_base") {
            c.version_url_base = value;
        } else if (key == "annotation_mode") {
            if (value != "compact" && value != "full")
                throw ConfigError("annotation_mode: expected compact|full");
            c.full_annotations = value == "full";
        } else if (key == "threads") {
            long long v;
            if (!str::parse_i64(value, v) || v < 1 || v > 256)
                throw ConfigError("threads: bad value");
            c.threads = static_cast<int>(v);
        } else if (key == "output") {
            c.output_path = resolve(base_dir, value);
        } else if (key == "manifest") {
            c.manifest_path = resolve(base_dir, value);
        } else if (key == "enrich_kb") {
            c.enrich_kb_path = resolve(base_dir, value);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }

    if (c.kind != "warc" && c.kind != "news" && c.kind != "tweets")
        throw ConfigError("kind: expected warc|news|tweets, got '" + c.kind + "'");
    if (c.kind == "warc" && c.cdx_paths.empty()) throw ConfigError("missing field: cdx");
    if (c.kind == "warc" && c.warc_dir.empty()) throw ConfigError("missing field: warc_dir");
    if (c.kind != "warc" && c.input_path.empty()) throw ConfigError("missing field: input");
    if (c.gazetteer_path.empty()) throw ConfigError("missing field: gazetteer");
    if (c.output_path.empty()) throw ConfigError("missing field: output");
    return c;
}

BuildConfig BuildConfig::parse_file(const std::string& path) {
    return parse(read_file(path), std::filesystem::path(path).parent_path().string());
}

std::string BuildStats::manifest_text() const {
    std::string out;
    out += "documents=" + std::to_string(documents) + "\n";
    out += "versions=" + std::to_string(versions) + "\n";
    out += "sameas=" + std::to_string(sameas) + "\n";
    out += "mentions=" + std::to_string(mentions) + "\n";
    out += "triples=" + std::to_string(triples) + "\n";
    out += "skipped_records=" + std::to_string(skipped_records) + "\n";
    out += "truncated_docs=" + std::to_string(truncated_docs) + "\n";
    out += "enriched_triples=" + std::to_string(enriched_triples) + "\n";
    return out;
}

namespace {

struct UnitResult {
    std::vector<rdf::Triple> triples;
    uint64_t mentions = 0;
    uint64_t truncated = 0;
    uint64_t sameas = 0;
    uint64_t versions = 0;
};

// Deterministic worker pool: unit i writes results[i]; the merge walks
// results in order, so output never depends on scheduling.
template <class Fn>
std::vector<UnitResult> parallel_units(size_t count, int threads, Fn&& fn) {
    std::vector<UnitResult> results(count);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= count) break;
            results[i] = fn(i);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

std::string link_text_for_article(const extract::NewsArticle& a) {
    return a.title + "\n" + a.body;
}

BuildStats build_warc(const BuildConfig& config, std::vector<rdf::Triple>& triples,
                      const link::Gazetteer& gaz) {
    BuildStats stats;
    archive::CdxIndex index = archive::load_cdx_index(config.cdx_paths);
    stats.skipped_records += index.skipped_count;

    // successful html responses under the size cap
    archive::CdxIndex filtered =
        archive::filter_metadata(index, [&](const archive::CdxRecord& r) {
            return r.status && *r.status == 200 && r.mime == "text/html" &&
                   r.compressed_size < config.size_cap;
        });

    auto groups_map = layer::group_versions(filtered.records);
    std::vector<const std::vector<archive::CdxRecord>*> groups;
    groups.reserve(groups_map.size());
    for (const auto& [surt, group] : groups_map) groups.push_back(&group);

    layer::LayerOptions options;
    options.version_url_base = config.version_url_base;
    options.full_annotations = config.full_annotations;

    auto results = parallel_units(groups.size(), config.threads, [&](size_t i) {
        const auto& group = *groups[i];
        UnitResult unit;
        auto roles = layer::detect_duplicates(group);
        unit.triples = layer::emit_archived_doc(group, roles, options);
        unit.versions = group.size();
        for (size_t v = 0; v < group.size(); ++v) {
            if (!roles[v].canonical) {
                auto t = layer::emit_sameas(group[v], group, roles, v, options);
                unit.triples.insert(unit.triples.end(), t.begin(), t.end());
                ++unit.sameas;
                continue;
            }
            const archive::CdxRecord& rec = group[v];
            auto warc = archive::read_warc_record(config.warc_dir + "/" + rec.filename,
                                                  rec.offset);
            std::string charset;
            if (const std::string* ct = warc.http_header("Content-Type")) {
                size_t cs = ct->find("charset=");
                if (cs != std::string::npos) charset = ct->substr(cs + 8);
            }
            auto content = extract::extract_page(warc.payload, rec.original_url, charset);
            auto linked = link::link(content.main_text, gaz, config.threshold, config.timeout_ms);
            if (linked.truncated) ++unit.truncated;
            unit.mentions += linked.mentions.size();
            auto t = layer::emit_version(rec, content, linked.mentions, options);
            unit.triples.insert(unit.triples.end(), t.begin(), t.end());
        }
        return unit;
    });

    stats.documents = groups.size();
    for (auto& unit : results) {
        stats.versions += unit.versions;
        stats.sameas += unit.sameas;
        stats.mentions += unit.mentions;
        stats.truncated_docs += unit.truncated;
        triples.insert(triples.end(), unit.triples.begin(), unit.triples.end());
    }
    return stats;
}

BuildStats build_news(const BuildConfig& config, std::vector<rdf::Triple>& triples,
                      const link::Gazetteer& gaz) {
    BuildStats stats;
    auto corpus = extract::parse_news_corpus(config.input_path);
    stats.skipped_records += corpus.skipped_count;
    layer::LayerOptions options;
    options.full_annotations = config.full_annotations;

    auto results = parallel_units(corpus.records.size(), config.threads, [&](size_t i) {
        const auto& article = corpus.records[i];
        UnitResult unit;
        auto linked =
            link::link(link_text_for_article(article), gaz, config.threshold, config.timeout_ms);
        if (linked.truncated) ++unit.truncated;
        unit.mentions = linked.mentions.size();
        unit.triples = layer::emit_article(article, linked.mentions, options);
        return unit;
    });
    stats.documents = corpus.records.size();
    for (auto& unit : results) {
        stats.mentions += unit.mentions;
        stats.truncated_docs += unit.truncated;
        triples.insert(triples.end(), unit.triples.begin(), unit.triples.end());
    }
    return stats;
}

BuildStats build_tweets(const BuildConfig& config, std::vector<rdf::Triple>& triples,
                        const link::Gazetteer& gaz) {
    BuildStats stats;
    auto corpus = extract::parse_tweet_stream(config.input_path);
    stats.skipped_records += corpus.skipped_count;
    layer::LayerOptions options;
    options.full_annotations = config.full_annotations;

    auto results = parallel_units(corpus.records.size(), config.threads, [&](size_t i) {
        const auto& tweet = corpus.records[i];
        UnitResult unit;
        auto linked = link::link(tweet.text, gaz, config.threshold, config.timeout_ms);
        if (linked.truncated) ++unit.truncated;
        unit.mentions = linked.mentions.size();
        unit.triples = layer::emit_tweet(tweet, linked.mentions, options);
        return unit;
    });
    stats.documents = corpus.records.size();
    for (auto& unit : results) {
        stats.mentions += unit.mentions;
        stats.truncated_docs += unit.truncated;
        triples.insert(triples.end(), unit.triples.begin(), unit.triples.end());
    }
    return stats;
}

}  // namespace

BuildStats run_build(const BuildConfig& config) {
    link::Gazetteer gaz = link::build_gazetteer(config.gazetteer_path);

    std::vector<rdf::Triple> triples;
    BuildStats stats;
    if (config.kind == "warc") stats = build_warc(config, triples, gaz);
    else if (config.kind == "news") stats = build_news(config, triples, gaz);
    else stats = build_tweets(config, triples, gaz);

    if (!config.enrich_kb_path.empty()) {
        rdf::GraphStore kb;
        rdf::parse_n3_into(kb, read_file_maybe_gzip(config.enrich_kb_path));
        std::set<std::string> uris;
        for (const auto& t : triples)
            if (t.predicate.lexical == vocab::kOaeHasMatchedUri) uris.insert(t.object.lexical);
        auto enriched = layer::enrich_entities(uris, kb);
        stats.enriched_triples = enriched.size();
        triples.insert(triples.end(), enriched.begin(), enriched.end());
    }

    rdf::PrefixMap prefixes =
        config.full_annotations ? vocab::layer_prefixes_with_oa() : vocab::layer_prefixes();
    std::string text = layer::serialize_layer(triples, prefixes);

    // triples = serialized statement lines (set semantics applied)
    size_t lines = static_cast<size_t>(std::count(text.begin(), text.end(), '\n'));
    stats.triples = lines - prefixes.size();

    if (str::ends_with(config.output_path, ".gz"))
        write_file(config.output_path, gz::compress_member(text));
    else
        write_file(config.output_path, text);

    if (!config.manifest_path.empty()) write_file(config.manifest_path, stats.manifest_text());
    return stats;
}

std::vector<eval::LayerDoc> corpus_documents(const BuildConfig& config) {
    std::vector<eval::LayerDoc> docs;
    if (config.kind == "news") {
        auto corpus = extract::parse_news_corpus(config.input_path);
        for (const auto& a : corpus.records)
            docs.push_back({a.url, a.publication_date, a.title, a.body});
    } else if (config.kind == "tweets") {
        auto corpus = extract::parse_tweet_stream(config.input_path);
        for (const auto& t : corpus.records)
            docs.push_back({layer::tweet_iri(t), t.created_at, "", t.text});
    }
    return docs;
}

}  // namespace owa::pipeline
