#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "owa/query/eval.hpp"
#include "owa/rdf/store.hpp"
#include "owa/util/civil_time.hpp"

namespace owa::analytics {

inline const std::string kDefaultKbIri = "http://dbpedia.org/sparql";

struct MonthValue {
    int month = 0;
    double value = 0.0;  // in [0, 1]
};

// Per month of `year`: |docs mentioning entity| / |docs|, months without
// documents omitted. "Documents" are the subjects carrying dc:date.
std::vector<MonthValue> popularity_series(const rdf::GraphStore& layer,
                                          const std::string& entity_iri, int year);

struct RankedEntity {
    std::string iri;
    uint64_t count = 0;
};

// Distinct documents in [from, to] mentioning both the seed and the
// candidate; candidates typed `kb_type_iri` in the registered KB, seed
// excluded. Descending count, ties by IRI, at most k.
std::vector<RankedEntity> top_cooccurring(const rdf::GraphStore& layer,
                                          const query::ServiceRegistry& registry,
                                          const std::string& entity_iri,
                                          const std::string& kb_type_iri, const CivilTime& from,
                                          const CivilTime& to, size_t k,
                                          const std::string& kb_iri = kDefaultKbIri);

struct RankedDocument {
    std::string node;  // IRI text or _:label
    uint64_t common = 0;
};

// Documents sharing the most distinct matched URIs with doc_node, itself
// excluded; ties by node label. Throws UnknownDocument.
std::vector<RankedDocument> similar_documents(const rdf::GraphStore& layer,
                                              const std::string& doc_node, size_t k);

// Most-mentioned entities of a KB type in [from, to]. Versioned layers are
// counted through the hasVersion join (pages, not versions).
std::vector<RankedEntity> top_entities(const rdf::GraphStore& layer,
                                       const query::ServiceRegistry& registry,
                                       const std::string& kb_type_iri, const CivilTime& from,
                                       const CivilTime& to, size_t k,
                                       const std::string& kb_iri = kDefaultKbIri);

// The SPARQL formulations the typed operations mirror; shipped so the
// equivalence is testable and visible (--show-sparql on the CLI).
std::string sparql_for_popularity_all(int year);
std::string sparql_for_popularity_entity(const std::string& entity_iri, int year);
std::string sparql_for_cooccurring(const std::string& entity_iri, const std::string& kb_type_iri,
                                   const CivilTime& from, const CivilTime& to, size_t k,
                                   const std::string& kb_iri = kDefaultKbIri);
std::string sparql_for_similar(const std::string& doc_node, size_t k);
std::string sparql_for_top_entities(const std::string& kb_type_iri, const CivilTime& from,
                                    const CivilTime& to, size_t k, bool versioned,
                                    const std::string& kb_iri = kDefaultKbIri);

}  // namespace owa::analytics
