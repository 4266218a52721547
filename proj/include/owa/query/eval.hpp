#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "owa/query/ast.hpp"
#include "owa/rdf/store.hpp"

namespace owa::query {

// Bag of binding rows with projection/aggregation applied; unbound cells
// are nullopt.
struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<rdf::Term>>> rows;
};

// SERVICE endpoints resolve against locally registered stores, never the
// network. Registration is idempotent by IRI (re-registering replaces).
class ServiceRegistry {
  public:
    void register_service(const std::string& iri, std::shared_ptr<const rdf::GraphStore> store);
    const rdf::GraphStore* find(const std::string& iri) const;
    std::vector<std::string> iris() const;

  private:
    std::map<std::string, std::shared_ptr<const rdf::GraphStore>> stores_;
};

struct EvalOptions {
    // Keeps triple patterns in query order instead of selectivity order;
    // results must not change (exercised by the join-order property tests).
    bool keep_pattern_order = false;
};

// Bottom-up evaluation: index-backed BGP joins in selectivity order,
// filters once their variables are in scope (error = row dropped), OPTIONAL
// as left outer join, SERVICE against the registry, subqueries first, then
// grouping / aggregation / DISTINCT / ORDER BY / LIMIT.
ResultTable evaluate(const Query& q, const rdf::GraphStore& store,
                     const ServiceRegistry& registry = {}, const EvalOptions& options = {});

// Join order and index choices, for debugging.
std::string explain(const Query& q);
std::string explain(const Query& q, const rdf::GraphStore& store);

// Rendering: aligned text table or CSV with one header row.
std::string render_table(const ResultTable& t, const rdf::PrefixMap& prefixes);
std::string render_csv(const ResultTable& t, const rdf::PrefixMap& prefixes);

}  // namespace owa::query
