#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <tuple>

namespace owa::rdf {

enum class TermKind : uint8_t { Iri, Blank, Literal };

// RDF term: IRI, blank node, or literal with optional datatype IRI or
// language tag (mutually exclusive).
struct Term {
    TermKind kind = TermKind::Iri;
    std::string lexical;   // IRI text, blank label, or literal value
    std::string datatype;  // datatype IRI, empty when none
    std::string lang;      // language tag, empty when none

    static Term iri(std::string v) { return {TermKind::Iri, std::move(v), {}, {}}; }
    static Term blank(std::string label) { return {TermKind::Blank, std::move(label), {}, {}}; }
    static Term literal(std::string v) { return {TermKind::Literal, std::move(v), {}, {}}; }
    static Term typed(std::string v, std::string dt) {
        return {TermKind::Literal, std::move(v), std::move(dt), {}};
    }
    static Term tagged(std::string v, std::string language) {
        return {TermKind::Literal, std::move(v), {}, std::move(language)};
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_blank() const { return kind == TermKind::Blank; }
    bool is_literal() const { return kind == TermKind::Literal; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.lexical == b.lexical && a.datatype == b.datatype &&
               a.lang == b.lang;
    }
    friend auto operator<=>(const Term& a, const Term& b) {
        return std::tie(a.kind, a.lexical, a.datatype, a.lang) <=>
               std::tie(b.kind, b.lexical, b.datatype, b.lang);
    }
};

struct TermHash {
    size_t operator()(const Term& t) const {
        size_t h = std::hash<std::string>{}(t.lexical);
        h ^= std::hash<std::string>{}(t.datatype) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<std::string>{}(t.lang) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h * 3 + static_cast<size_t>(t.kind);
    }
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple& a, const Triple& b) {
        return std::tie(a.subject, a.predicate, a.object) <=>
               std::tie(b.subject, b.predicate, b.object);
    }
};

}  // namespace owa::rdf
