#include "owa/layer/builder.hpp"

#include <algorithm>

#include "owa/rdf/vocab.hpp"
#include "owa/util/hash.hpp"
#include "owa/util/strings.hpp"
#include "owa/util/url.hpp"

namespace owa::layer {

using rdf::Term;
using rdf::Triple;

std::map<std::string, std::vector<archive::CdxRecord>> group_versions(
    const std::vector<archive::CdxRecord>& records) {
    std::map<std::string, std::vector<archive::CdxRecord>> groups;
    for (const auto& r : records) groups[r.surt_url].push_back(r);
    for (auto& [surt, group] : groups) {
        std::stable_sort(group.begin(), group.end(),
                         [](const archive::CdxRecord& a, const archive::CdxRecord& b) {
                             return a.timestamp < b.timestamp;
                         });
        group.erase(std::unique(group.begin(), group.end(),
                                [](const archive::CdxRecord& a, const archive::CdxRecord& b) {
                                    return a.timestamp == b.timestamp;
                                }),
                    group.end());
    }
    return groups;
}

std::vector<VersionRole> detect_duplicates(const std::vector<archive::CdxRecord>& group) {
    std::vector<VersionRole> roles(group.size());
    std::map<std::string, size_t> earliest_by_digest;  // group is time-ordered
    for (size_t i = 0; i < group.size(); ++i) {
        auto [it, first_seen] = earliest_by_digest.emplace(group[i].digest, i);
        if (first_seen) {
            roles[i].canonical = true;
        } else {
            roles[i].canonical = false;
            roles[i].same_as_index = it->second;
        }
    }
    return roles;
}

static std::string datetime_literal(const archive::CdxRecord& r) {
    return format_xsd_datetime(r.capture_time());
}

rdf::Term document_node(const std::vector<archive::CdxRecord>& group) {
    const std::string& url = group.front().original_url;
    auto parsed = Url::parse(url);
    if (parsed && (parsed->scheme == "http" || parsed->scheme == "https"))
        return Term::iri(url);
    return Term::blank("d" + hex64(fnv1a64(group.front().surt_url)));
}

rdf::Term version_node(const archive::CdxRecord& version, const LayerOptions& options) {
    if (!options.version_url_base.empty())
        return Term::iri(options.version_url_base + "/" + version.timestamp + "/" +
                         version.original_url);
    return Term::blank("v" + hex64(fnv1a64(version.surt_url)) + "-" + version.timestamp);
}

std::vector<Triple> emit_archived_doc(const std::vector<archive::CdxRecord>& group,
                                      const std::vector<VersionRole>& roles,
                                      const LayerOptions& options) {
    std::vector<Triple> out;
    if (group.empty()) return out;
    Term doc = document_node(group);
    out.push_back({doc, Term::iri(vocab::kRdfType), Term::iri(vocab::kArchivedDocument)});
    out.push_back({doc, Term::iri(vocab::kFirstCapture),
                   Term::typed(datetime_literal(group.front()), vocab::kXsdDateTime)});
    out.push_back({doc, Term::iri(vocab::kLastCapture),
                   Term::typed(datetime_literal(group.back()), vocab::kXsdDateTime)});
    out.push_back({doc, Term::iri(vocab::kNumOfCaptures),
                   Term::typed(std::to_string(group.size()), vocab::kXsdInteger)});
    // every version, same-as ones included
    (void)roles;
    for (const auto& v : group)
        out.push_back({doc, Term::iri(vocab::kDcHasVersion), version_node(v, options)});
    return out;
}

// Mention nodes _:e<uid>-<i>; uid is a stable hash of the attachment node's
// label so serialization is deterministic.
static void emit_mentions(std::vector<Triple>& out, const Term& target,
                          const std::vector<link::EntityMention>& mentions,
                          const LayerOptions& options) {
    std::string uid = hex64(fnv1a64(target.lexical));
    for (size_t i = 0; i < mentions.size(); ++i) {
        const auto& m = mentions[i];
        Term entity = Term::blank("e" + uid + "-" + std::to_string(i));
        if (options.full_annotations) {
            Term ann = Term::blank("a" + uid + "-" + std::to_string(i));
            out.push_back({ann, Term::iri(vocab::kRdfType), Term::iri(vocab::kOaAnnotation)});
            out.push_back({ann, Term::iri(vocab::kOaHasTarget), target});
            out.push_back({ann, Term::iri(vocab::kOaHasBody), entity});
        } else {
            out.push_back({target, Term::iri(vocab::kMentions), entity});
        }
        out.push_back({entity, Term::iri(vocab::kRdfType), Term::iri(vocab::kOaeEntity)});
        out.push_back({entity, Term::iri(vocab::kOaeConfidence),
                       Term::typed(str::format_double(m.confidence), vocab::kXsdDouble)});
        out.push_back({entity, Term::iri(vocab::kOaeDetectedAs), Term::literal(m.surface)});
        out.push_back({entity, Term::iri(vocab::kOaePosition),
                       Term::typed(std::to_string(m.position), vocab::kXsdInteger)});
        out.push_back({entity, Term::iri(vocab::kOaeHasMatchedUri), Term::iri(m.uri)});
    }
}

std::vector<Triple> emit_version(const archive::CdxRecord& version,
                                 const extract::PageContent& content,
                                 const std::vector<link::EntityMention>& mentions,
                                 const LayerOptions& options) {
    std::vector<Triple> out;
    Term node = version_node(version, options);
    out.push_back({node, Term::iri(vocab::kRdfType), Term::iri(vocab::kVersionedDocument)});
    out.push_back(
        {node, Term::iri(vocab::kDcDate), Term::typed(datetime_literal(version), vocab::kXsdDateTime)});
    out.push_back({node, Term::iri(vocab::kDcFormat), Term::literal(version.mime)});
    if (content.title)
        out.push_back({node, Term::iri(vocab::kDcTitle), Term::literal(*content.title)});
    for (const auto& link : content.links)
        out.push_back({node, Term::iri(vocab::kDcReferences), Term::iri(link)});
    emit_mentions(out, node, mentions, options);
    return out;
}

std::vector<Triple> emit_sameas(const archive::CdxRecord& version,
                                const std::vector<archive::CdxRecord>& group,
                                const std::vector<VersionRole>& roles, size_t version_index,
                                const LayerOptions& options) {
    std::vector<Triple> out;
    if (roles[version_index].canonical) return out;
    Term node = version_node(version, options);
    Term canonical = version_node(group[roles[version_index].same_as_index], options);
    out.push_back({node, Term::iri(vocab::kRdfType), Term::iri(vocab::kVersionedDocument)});
    out.push_back(
        {node, Term::iri(vocab::kDcDate), Term::typed(datetime_literal(version), vocab::kXsdDateTime)});
    out.push_back({node, Term::iri(vocab::kOwlSameAs), canonical});
    return out;
}

std::vector<Triple> emit_article(const extract::NewsArticle& article,
                                 const std::vector<link::EntityMention>& mentions,
                                 const LayerOptions& options) {
    std::vector<Triple> out;
    Term node = Term::iri(article.url);
    out.push_back({node, Term::iri(vocab::kRdfType), Term::iri(vocab::kArchivedDocument)});
    out.push_back({node, Term::iri(vocab::kDcDate),
                   Term::typed(format_xsd_date(article.publication_date), vocab::kXsdDate)});
    out.push_back({node, Term::iri(vocab::kDcTitle), Term::literal(article.title)});
    emit_mentions(out, node, mentions, options);
    return out;
}

std::string tweet_iri(const extract::TweetRecord& tweet) {
    return "https://twitter.com/" + tweet.screen_name + "/status/" + tweet.id;
}

std::vector<Triple> emit_tweet(const extract::TweetRecord& tweet,
                               const std::vector<link::EntityMention>& mentions,
                               const LayerOptions& options) {
    std::vector<Triple> out;
    Term node = Term::iri(tweet_iri(tweet));
    out.push_back({node, Term::iri(vocab::kRdfType), Term::iri(vocab::kTweet)});
    // typed as an archived document too, to keep cross-layer queries uniform
    out.push_back({node, Term::iri(vocab::kRdfType), Term::iri(vocab::kArchivedDocument)});
    out.push_back({node, Term::iri(vocab::kDcDate),
                   Term::typed(format_xsd_datetime(tweet.created_at), vocab::kXsdDateTime)});
    out.push_back({node, Term::iri(vocab::kSchemaText), Term::literal(tweet.text)});
    out.push_back({node, Term::iri(vocab::kRetweetCount),
                   Term::typed(std::to_string(tweet.retweet_count), vocab::kXsdInteger)});
    out.push_back({node, Term::iri(vocab::kFavoriteCount),
                   Term::typed(std::to_string(tweet.favorite_count), vocab::kXsdInteger)});
    out.push_back({node, Term::iri(vocab::kDcCreator), Term::literal(tweet.screen_name)});
    emit_mentions(out, node, mentions, options);
    return out;
}

std::vector<Triple> enrich_entities(const std::set<std::string>& mention_uris,
                                    const rdf::GraphStore& kb_store) {
    std::vector<Triple> out;
    const rdf::TermPool& pool = kb_store.pool();
    for (const std::string& uri : mention_uris) {
        auto subject = pool.find(Term::iri(uri));
        if (!subject) continue;
        kb_store.for_each({*subject, std::nullopt, std::nullopt}, [&](const rdf::IdTriple& t) {
            out.push_back({pool.get(t[0]), pool.get(t[1]), pool.get(t[2])});
        });
    }
    return out;
}

std::string serialize_layer(const std::vector<Triple>& triples, const rdf::PrefixMap& prefixes) {
    return rdf::serialize_n3(triples, prefixes);
}

}  // namespace owa::layer
