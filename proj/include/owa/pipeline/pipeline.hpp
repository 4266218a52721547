#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "owa/eval/harness.hpp"
#include "owa/rdf/store.hpp"

namespace owa::pipeline {

// Flat key=value build configuration. Defaults mirror the construction
// parameters of the layers this pipeline reproduces: threshold -4, 10 s
// per-record timeout, 100 KB compressed-size cap.
struct BuildConfig {
    std::string kind;  // warc | news | tweets
    std::vector<std::string> cdx_paths;
    std::string warc_dir;
    std::string input_path;  // corpus file for news / tweets
    std::string gazetteer_path;
    double threshold = -4.0;
    int64_t timeout_ms = 10'000;
    uint64_t size_cap = 100 * 1024;
    std::string version_url_base;
    bool full_annotations = false;
    int threads = 1;
    std::string output_path;
    std::string manifest_path;
    std::string enrich_kb_path;

    static BuildConfig parse(const std::string& text, const std::string& base_dir);
    static BuildConfig parse_file(const std::string& path);
};

struct BuildStats {
    uint64_t documents = 0;
    uint64_t versions = 0;
    uint64_t sameas = 0;
    uint64_t mentions = 0;
    uint64_t triples = 0;
    uint64_t skipped_records = 0;   // malformed cdx / corpus lines
    uint64_t truncated_docs = 0;    // linker timeouts
    uint64_t enriched_triples = 0;

    std::string manifest_text() const;
};

// Runs read -> extract -> link -> emit -> serialize and writes the layer
// (gzip when the output path ends in .gz) plus the manifest. Deterministic
// output bytes for any thread count.
BuildStats run_build(const BuildConfig& config);

// The corpus as keyword-search documents (doc_id = layer IRI). Used by the
// evaluation harness; news docs search title+body, tweets their text.
std::vector<eval::LayerDoc> corpus_documents(const BuildConfig& config);

}  // namespace owa::pipeline
