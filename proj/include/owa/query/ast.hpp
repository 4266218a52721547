#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "owa/rdf/n3.hpp"
#include "owa/rdf/term.hpp"

namespace owa::query {

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

enum class ExprKind {
    Var,       // name
    Constant,  // rdf term (iri, literal)
    Call,      // name in {year, month, day, lang, str} or a cast IRI
    Binary,    // name is the operator: && || = != < > <= >= + - * /
    Count,     // the one aggregate the listings need; args empty = COUNT(*)
};

struct Expr {
    ExprKind kind = ExprKind::Var;
    std::string name;
    rdf::Term term;
    std::vector<ExprPtr> args;
    bool distinct = false;  // COUNT(DISTINCT ...)

    bool is_aggregate() const { return kind == ExprKind::Count; }
};

// var | (expr AS var) | bare expression (auto-named expr<position>)
struct SelectItem {
    ExprPtr expr;
    std::string alias;  // output column name
};

// positions are Var or Constant expressions
struct TriplePattern {
    ExprPtr s, p, o;
};

struct GroupGraphPattern;
struct Query;

struct GroupElement {
    enum class Kind { Triples, Filter, Optional, Service, SubSelect };
    Kind kind = Kind::Triples;
    std::vector<TriplePattern> triples;
    ExprPtr filter;
    std::shared_ptr<GroupGraphPattern> group;  // Optional / Service body
    std::string service_iri;
    std::shared_ptr<Query> subquery;
};

struct GroupGraphPattern {
    std::vector<GroupElement> elements;
};

struct GroupKey {
    ExprPtr expr;
    std::string alias;  // "(expr AS ?v)" form; empty otherwise
};

struct OrderKey {
    ExprPtr expr;
    bool descending = false;
};

struct Query {
    bool distinct = false;
    bool select_all = false;
    std::vector<SelectItem> select_items;
    GroupGraphPattern where;
    std::vector<GroupKey> group_by;
    std::vector<OrderKey> order_by;
    std::optional<uint64_t> limit;
    rdf::PrefixMap prefixes;  // declared PREFIXes, kept for rendering
};

using QueryAst = Query;

// Throws QuerySyntaxError with the byte offset of the failure; constructs
// outside the subset (UNION, property paths, ...) are rejected the same way.
Query parse_query(std::string_view text);

}  // namespace owa::query
