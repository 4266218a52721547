#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "owa/archive/cdx.hpp"
#include "owa/extract/corpus.hpp"
#include "owa/extract/html.hpp"
#include "owa/link/linker.hpp"
#include "owa/rdf/n3.hpp"
#include "owa/rdf/store.hpp"

namespace owa::layer {

struct LayerOptions {
    // Version node IRI template "{base}/{timestamp}/{original_url}"; empty
    // base switches to deterministic blank nodes _:v<hash>-<timestamp>.
    std::string version_url_base;
    // Compact mode, the default, attaches oae:Entity nodes directly via
    // schema:mentions; full mode goes through oa:Annotation with
    // hasTarget/hasBody.
    bool full_annotations = false;
};

// Partition captures by surt_url; groups time-ordered, exact duplicate
// (surt, timestamp) captures collapsed to the first occurrence.
std::map<std::string, std::vector<archive::CdxRecord>> group_versions(
    const std::vector<archive::CdxRecord>& records);

// canonical == true, or same_as_index pointing at the earliest capture with
// the same digest (digest class, not adjacency).
struct VersionRole {
    bool canonical = true;
    size_t same_as_index = 0;
};
std::vector<VersionRole> detect_duplicates(const std::vector<archive::CdxRecord>& group);

rdf::Term document_node(const std::vector<archive::CdxRecord>& group);
rdf::Term version_node(const archive::CdxRecord& version, const LayerOptions& options);

std::vector<rdf::Triple> emit_archived_doc(const std::vector<archive::CdxRecord>& group,
                                           const std::vector<VersionRole>& roles,
                                           const LayerOptions& options);

std::vector<rdf::Triple> emit_version(const archive::CdxRecord& version,
                                      const extract::PageContent& content,
                                      const std::vector<link::EntityMention>& mentions,
                                      const LayerOptions& options);

// Exactly three triples: type, capture date, owl:sameAs. Returns nothing
// for a canonical version.
std::vector<rdf::Triple> emit_sameas(const archive::CdxRecord& version,
                                     const std::vector<archive::CdxRecord>& group,
                                     const std::vector<VersionRole>& roles, size_t version_index,
                                     const LayerOptions& options);

std::vector<rdf::Triple> emit_article(const extract::NewsArticle& article,
                                      const std::vector<link::EntityMention>& mentions,
                                      const LayerOptions& options);

std::vector<rdf::Triple> emit_tweet(const extract::TweetRecord& tweet,
                                    const std::vector<link::EntityMention>& mentions,
                                    const LayerOptions& options);

// Copies every KB triple whose subject is one of the mention URIs.
std::vector<rdf::Triple> enrich_entities(const std::set<std::string>& mention_uris,
                                         const rdf::GraphStore& kb_store);

// @prefix header then one triple per line, sorted; byte-deterministic.
std::string serialize_layer(const std::vector<rdf::Triple>& triples,
                            const rdf::PrefixMap& prefixes);

std::string tweet_iri(const extract::TweetRecord& tweet);

}  // namespace owa::layer
