#include "owa/analytics/analytics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "owa/errors.hpp"
#include "owa/rdf/vocab.hpp"

namespace owa::analytics {

using rdf::GraphStore;
using rdf::Term;
using rdf::TermId;

namespace {

std::optional<CivilTime> date_of(const Term& t) {
    if (!t.is_literal()) return std::nullopt;
    if (t.datatype == vocab::kXsdDate) return parse_xsd_date(t.lexical);
    if (t.datatype == vocab::kXsdDateTime) return parse_xsd_datetime(t.lexical);
    return std::nullopt;
}

bool in_range(const CivilTime& d, const CivilTime& from, const CivilTime& to) {
    return d.epoch_seconds() >= from.epoch_seconds() && d.epoch_seconds() <= to.epoch_seconds();
}

// (document, capture/publication date) pairs: every subject carrying dc:date
std::vector<std::pair<TermId, CivilTime>> dated_documents(const GraphStore& layer) {
    std::vector<std::pair<TermId, CivilTime>> out;
    auto dc_date = layer.pool().find(Term::iri(vocab::kDcDate));
    if (!dc_date) return out;
    layer.for_each({std::nullopt, *dc_date, std::nullopt}, [&](const rdf::IdTriple& t) {
        if (auto d = date_of(layer.pool().get(t[2]))) out.push_back({t[0], *d});
    });
    return out;
}

// distinct matched URIs per mention-bearing subject
std::set<TermId> mentioned_uris(const GraphStore& layer, TermId doc) {
    std::set<TermId> uris;
    auto mentions = layer.pool().find(Term::iri(vocab::kMentions));
    auto matched = layer.pool().find(Term::iri(vocab::kOaeHasMatchedUri));
    if (!mentions || !matched) return uris;
    layer.for_each({doc, *mentions, std::nullopt}, [&](const rdf::IdTriple& m) {
        layer.for_each({m[2], *matched, std::nullopt},
                       [&](const rdf::IdTriple& u) { uris.insert(u[2]); });
    });
    return uris;
}

// instances of a type in the registered KB
std::set<std::string> kb_instances(const query::ServiceRegistry& registry,
                                   const std::string& kb_iri, const std::string& type_iri) {
    const GraphStore* kb = registry.find(kb_iri);
    if (!kb) throw UnregisteredService(kb_iri);
    std::set<std::string> out;
    auto rdf_type = kb->pool().find(Term::iri(vocab::kRdfType));
    auto type_id = kb->pool().find(Term::iri(type_iri));
    if (!rdf_type || !type_id) return out;
    kb->for_each({std::nullopt, *rdf_type, *type_id},
                 [&](const rdf::IdTriple& t) { out.insert(kb->pool().get(t[0]).lexical); });
    return out;
}

std::vector<RankedEntity> ranked(std::map<std::string, uint64_t> counts, size_t k) {
    std::vector<RankedEntity> out;
    for (auto& [iri, n] : counts) out.push_back({iri, n});
    std::sort(out.begin(), out.end(), [](const RankedEntity& a, const RankedEntity& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.iri < b.iri;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

Term node_term(const std::string& node) {
    if (node.rfind("_:", 0) == 0) return Term::blank(node.substr(2));
    return Term::iri(node);
}

std::string node_text(const Term& t) {
    return t.is_blank() ? "_:" + t.lexical : t.lexical;
}

}  // namespace

std::vector<MonthValue> popularity_series(const GraphStore& layer, const std::string& entity_iri,
                                          int year) {
    auto docs = dated_documents(layer);
    auto entity = layer.pool().find(Term::iri(entity_iri));

    std::map<int, uint64_t> total, mentioning;
    for (const auto& [doc, date] : docs) {
        if (date.year != year) continue;
        ++total[date.month];
        if (entity) {
            auto uris = mentioned_uris(layer, doc);
            if (uris.count(*entity)) ++mentioning[date.month];
        }
    }
    std::vector<MonthValue> out;
    for (const auto& [month, all] : total) {
        double ment = static_cast<double>(mentioning.count(month) ? mentioning[month] : 0);
        out.push_back({month, ment / static_cast<double>(all)});
    }
    return out;  // months with zero documents never appear in `total`
}

std::vector<RankedEntity> top_cooccurring(const GraphStore& layer,
                                          const query::ServiceRegistry& registry,
                                          const std::string& entity_iri,
                                          const std::string& kb_type_iri, const CivilTime& from,
                                          const CivilTime& to, size_t k,
                                          const std::string& kb_iri) {
    std::set<std::string> allowed = kb_instances(registry, kb_iri, kb_type_iri);
    auto seed = layer.pool().find(Term::iri(entity_iri));
    std::map<std::string, uint64_t> counts;
    if (!seed) return {};
    for (const auto& [doc, date] : dated_documents(layer)) {
        if (!in_range(date, from, to)) continue;
        auto uris = mentioned_uris(layer, doc);
        if (!uris.count(*seed)) continue;
        for (TermId uri : uris) {
            if (uri == *seed) continue;
            const std::string& text = layer.pool().get(uri).lexical;
            if (allowed.count(text)) ++counts[text];
        }
    }
    return ranked(std::move(counts), k);
}

std::vector<RankedDocument> similar_documents(const GraphStore& layer, const std::string& doc_node,
                                              size_t k) {
    auto node = layer.pool().find(node_term(doc_node));
    if (!node || layer.count({*node, std::nullopt, std::nullopt}) == 0)
        throw UnknownDocument(doc_node);

    std::set<TermId> base = mentioned_uris(layer, *node);
    std::map<std::string, uint64_t> counts;
    if (!base.empty()) {
        auto mentions = layer.pool().find(Term::iri(vocab::kMentions));
        std::set<TermId> docs;
        layer.for_each({std::nullopt, *mentions, std::nullopt},
                       [&](const rdf::IdTriple& t) { docs.insert(t[0]); });
        for (TermId other : docs) {
            if (other == *node) continue;
            auto uris = mentioned_uris(layer, other);
            uint64_t common = 0;
            for (TermId u : uris)
                if (base.count(u)) ++common;
            if (common > 0) counts[node_text(layer.pool().get(other))] = common;
        }
    }
    std::vector<RankedDocument> out;
    for (auto& [node_label, n] : counts) out.push_back({node_label, n});
    std::sort(out.begin(), out.end(), [](const RankedDocument& a, const RankedDocument& b) {
        if (a.common != b.common) return a.common > b.common;
        return a.node < b.node;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

std::vector<RankedEntity> top_entities(const GraphStore& layer,
                                       const query::ServiceRegistry& registry,
                                       const std::string& kb_type_iri, const CivilTime& from,
                                       const CivilTime& to, size_t k, const std::string& kb_iri) {
    std::set<std::string> allowed = kb_instances(registry, kb_iri, kb_type_iri);
    std::map<std::string, uint64_t> counts;

    auto has_version = layer.pool().find(Term::iri(vocab::kDcHasVersion));
    bool versioned = has_version && layer.count({std::nullopt, *has_version, std::nullopt}) > 0;

    if (versioned) {
        // count archived documents through the version join
        std::map<std::string, std::set<TermId>> pages_per_uri;
        auto dc_date = layer.pool().find(Term::iri(vocab::kDcDate));
        layer.for_each({std::nullopt, *has_version, std::nullopt}, [&](const rdf::IdTriple& hv) {
            TermId page = hv[0], version = hv[2];
            bool dated_in_range = false;
            if (dc_date) {
                layer.for_each({version, *dc_date, std::nullopt}, [&](const rdf::IdTriple& d) {
                    if (auto dt = date_of(layer.pool().get(d[2])))
                        if (in_range(*dt, from, to)) dated_in_range = true;
                });
            }
            if (!dated_in_range) return;
            for (TermId uri : mentioned_uris(layer, version)) {
                const std::string& text = layer.pool().get(uri).lexical;
                if (allowed.count(text)) pages_per_uri[text].insert(page);
            }
        });
        for (auto& [iri, pages] : pages_per_uri) counts[iri] = pages.size();
    } else {
        for (const auto& [doc, date] : dated_documents(layer)) {
            if (!in_range(date, from, to)) continue;
            for (TermId uri : mentioned_uris(layer, doc)) {
                const std::string& text = layer.pool().get(uri).lexical;
                if (allowed.count(text)) ++counts[text];
            }
        }
    }
    return ranked(std::move(counts), k);
}

// ------------------------------------------------------------ formulations --

namespace {

const char* kQueryPrologue =
    "PREFIX dc: <http://purl.org/dc/terms/>\n"
    "PREFIX schema: <http://schema.org/>\n"
    "PREFIX oae: <http://www.ics.forth.gr/isl/oae/core#>\n"
    "PREFIX owa: <http://l3s.de/owa/core#>\n"
    "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n";

std::string date_literal(const CivilTime& d) {
    return "\"" + format_xsd_date(d) + "\"^^xsd:date";
}

}  // namespace

std::string sparql_for_popularity_all(int year) {
    return std::string(kQueryPrologue) +
           "SELECT (month(?date) AS ?month) (count(?doc) AS ?cAll) WHERE {\n"
           "  ?doc dc:date ?date FILTER(year(?date) = " +
           std::to_string(year) + ")\n} GROUP BY month(?date) ORDER BY ?month";
}

std::string sparql_for_popularity_entity(const std::string& entity_iri, int year) {
    return std::string(kQueryPrologue) +
           "SELECT (month(?date) AS ?month) (count(DISTINCT ?doc) AS ?cEnt) WHERE {\n"
           "  ?doc dc:date ?date FILTER(year(?date) = " +
           std::to_string(year) +
           ") .\n"
           "  ?doc schema:mentions ?entity .\n"
           "  ?entity oae:hasMatchedURI <" +
           entity_iri + ">\n} GROUP BY month(?date) ORDER BY ?month";
}

std::string sparql_for_cooccurring(const std::string& entity_iri, const std::string& kb_type_iri,
                                   const CivilTime& from, const CivilTime& to, size_t k,
                                   const std::string& kb_iri) {
    return std::string(kQueryPrologue) +
           "SELECT ?candidate (count(distinct ?doc) as ?num) WHERE {\n"
           "  SERVICE <" + kb_iri + "> {\n     ?candidate a <" + kb_type_iri + "> }\n"
           "  ?doc dc:date ?date FILTER(?date >= " + date_literal(from) +
           " &&\n                            ?date <= " + date_literal(to) + ") .\n"
           "  ?doc schema:mentions ?entity .\n"
           "  ?entity oae:hasMatchedURI <" + entity_iri + "> .\n"
           "  ?doc schema:mentions ?entityCand .\n"
           "  ?entityCand oae:hasMatchedURI ?candidate\n"
           "       FILTER (?candidate != <" + entity_iri + ">)\n"
           "} GROUP BY ?candidate ORDER BY DESC(?num) ?candidate LIMIT " + std::to_string(k);
}

std::string sparql_for_similar(const std::string& doc_node, size_t k) {
    std::string node = doc_node.rfind("_:", 0) == 0 ? doc_node : "<" + doc_node + ">";
    return std::string(kQueryPrologue) +
           "SELECT ?doc2 (count(DISTINCT ?uri2) as ?numOfCommon) WHERE {\n"
           "  " + node + " schema:mentions ?entity1 .\n"
           "  ?entity1 oae:hasMatchedURI ?uri1 .\n"
           "  ?doc2 schema:mentions ?entity2\n"
           "      FILTER (?doc2 != " + node + ")\n"
           "  ?entity2 oae:hasMatchedURI ?uri2 FILTER(?uri2 = ?uri1) .\n"
           "} GROUP BY ?doc2 ORDER BY DESC(?numOfCommon) ?doc2 LIMIT " + std::to_string(k);
}

std::string sparql_for_top_entities(const std::string& kb_type_iri, const CivilTime& from,
                                    const CivilTime& to, size_t k, bool versioned,
                                    const std::string& kb_iri) {
    std::string body;
    if (versioned) {
        body =
            "  ?page a owa:ArchivedDocument ;\n"
            "        dc:hasVersion ?version .\n"
            "  ?version dc:date ?date FILTER(?date >= " + date_literal(from) +
            " && ?date <= " + date_literal(to) + ") .\n"
            "  ?version schema:mentions ?ent .\n"
            "  ?ent oae:hasMatchedURI ?uri .\n";
    } else {
        body =
            "  ?page dc:date ?date FILTER(?date >= " + date_literal(from) +
            " && ?date <= " + date_literal(to) + ") .\n"
            "  ?page schema:mentions ?ent .\n"
            "  ?ent oae:hasMatchedURI ?uri .\n";
    }
    return std::string(kQueryPrologue) + "SELECT ?uri (count(DISTINCT ?page) as ?num) WHERE {\n" +
           "  SERVICE <" + kb_iri + "> {\n    ?uri a <" + kb_type_iri + "> }\n" + body +
           "} GROUP BY ?uri ORDER BY DESC(?num) ?uri LIMIT " + std::to_string(k);
}

}  // namespace owa::analytics
