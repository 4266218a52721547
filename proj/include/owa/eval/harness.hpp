#pragma once

#include <map>
#include <string>
#include <vector>

#include "owa/query/eval.hpp"
#include "owa/rdf/store.hpp"
#include "owa/util/civil_time.hpp"

namespace owa::eval {

// One exploratory information need: a date-scoped SPARQL query plus the
// free-text query a keyword system would get.
struct InfoNeed {
    int id = 0;
    std::string description;
    std::string keywords;
    CivilTime date_from;
    CivilTime date_to;
    std::string sparql;  // full query text
};

// (need_id, doc_id) -> relevant?
using JudgmentSet = std::map<std::pair<int, std::string>, bool>;

// A document as the keyword baseline sees it.
struct LayerDoc {
    std::string doc_id;  // the IRI the layer uses for the document
    CivilTime date;
    std::string title;
    std::string text;
};

// Needs file: one record per line, TAB-separated key=value fields
// id, description, keywords, date_from, date_to, sparql (path to .rq,
// resolved against the needs file's directory). Judgments: three TAB
// columns need_id, doc_id, relevant|irrelevant.
std::vector<InfoNeed> load_needs(const std::string& path);
JudgmentSet load_judgments(const std::string& path);

// Documents in range ranked by summed per-term token matches over
// title+text, case-insensitive; zero scores excluded; ties by doc_id.
std::vector<std::string> keyword_search(const std::vector<LayerDoc>& docs,
                                        const std::string& keywords, const CivilTime& from,
                                        const CivilTime& to);

// The five quantity families of the effectiveness table.
struct NeedMetrics {
    int need_id = 0;
    size_t sparql_hits = 0;
    size_t sparql_relevant = 0;
    size_t baseline_hits = 0;
    size_t baseline_relevant_in_sparql = 0;
    size_t baseline_relevant_not_in_sparql = 0;
};

// SPARQL hits are the distinct bindings of each query's first projected
// variable.
std::vector<NeedMetrics> run_suite(const std::vector<InfoNeed>& needs,
                                   const JudgmentSet& judgments, const rdf::GraphStore& layer,
                                   const query::ServiceRegistry& registry,
                                   const std::vector<LayerDoc>& corpus);

struct NeedTiming {
    int need_id = 0;
    double warmup_ms = 0;          // excluded from the stats
    std::vector<double> runs_ms;   // R1..Rn
    double mean_ms = 0;
    bool deterministic = true;     // identical rows across runs
};

struct TimingTable {
    std::vector<NeedTiming> needs;
    double suite_mean_ms = 0;  // mean of the per-need means
};

// Sequential single-threaded timing loop; one warm-up run per need.
TimingTable time_queries(const std::vector<InfoNeed>& needs, const rdf::GraphStore& layer,
                         const query::ServiceRegistry& registry, int runs);

std::string metrics_csv(const std::vector<NeedMetrics>& rows);
std::string metrics_text(const std::vector<NeedMetrics>& rows);
std::string timing_csv(const TimingTable& t);
std::string timing_text(const TimingTable& t);

}  // namespace owa::eval
