#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "owa/rdf/store.hpp"
#include "owa/rdf/term.hpp"

namespace owa::rdf {

// prefix name (without ':') -> namespace IRI
using PrefixMap = std::map<std::string, std::string>;

// Parses the N3 subset the layer serializer emits plus plain N-Triples:
// @prefix directives, full IRIs, prefixed names, 'a', blank nodes, literals
// with ^^datatype or @lang, statement lists with ';' and ','. Blank node
// labels are kept verbatim (the layer files use content-derived labels so
// appended files can refer to the same nodes).
std::vector<Triple> parse_n3(std::string_view text, const std::string& base_iri = {});

void parse_n3_into(GraphStore& store, std::string_view text, const std::string& base_iri = {});

// Header of @prefix lines sorted by prefix, then one triple per line in
// prefixed-name form where a prefix applies, sorted by (subject, predicate,
// object) byte order of the rendered terms. Byte-deterministic.
std::string serialize_n3(const std::vector<Triple>& triples, const PrefixMap& prefixes);

std::string serialize_store(const GraphStore& store, const PrefixMap& prefixes);

// One term in N3 surface form (used by result tables and plans too).
std::string render_term(const Term& t, const PrefixMap& prefixes);
std::string render_term_nt(const Term& t);  // no prefix compression

}  // namespace owa::rdf
