#include "owa/rdf/n3.hpp"

#include <algorithm>
#include <cstdio>

#include "owa/errors.hpp"
#include "owa/util/strings.hpp"
#include "owa/util/url.hpp"

namespace owa::rdf {

namespace {

bool pn_local_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}
bool pn_local_char(char c) { return pn_local_start(c) || c == '-'; }

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(char(cp));
    } else if (cp < 0x800) {
        out.push_back(char(0xC0 | (cp >> 6)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(char(0xE0 | (cp >> 12)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(char(0xF0 | (cp >> 18)));
        out.push_back(char(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(char(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(char(0x80 | (cp & 0x3F)));
    }
}

class N3Parser {
  public:
    N3Parser(std::string_view text, std::string base) : text_(text), base_(std::move(base)) {}

    std::vector<Triple> run() {
        std::vector<Triple> out;
        skip_ws();
        while (!at_end()) {
            if (peek() == '@' || looking_at_keyword("PREFIX") || looking_at_keyword("BASE")) {
                directive();
            } else {
                statement(out);
            }
            skip_ws();
        }
        return out;
    }

  private:
    [[noreturn]] void fail(const std::string& reason) { throw ParseError(line_, reason); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }
    void advance() {
        if (text_[pos_] == '\n') ++line_;
        ++pos_;
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (str::is_space(c)) {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    bool looking_at_keyword(std::string_view kw) const {
        if (pos_ + kw.size() > text_.size()) return false;
        for (size_t i = 0; i < kw.size(); ++i)
            if (str::to_lower(text_[pos_ + i]) != str::to_lower(kw[i])) return false;
        char after = pos_ + kw.size() < text_.size() ? text_[pos_ + kw.size()] : ' ';
        return str::is_space(after);
    }

    void expect(char c) {
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    void directive() {
        bool sparql_style = false;
        if (peek() == '@') {
            advance();
        } else {
            sparql_style = true;
        }
        std::string kw;
        while (!at_end() && !str::is_space(peek())) {
            kw.push_back(str::to_lower(peek()));
            advance();
        }
        skip_ws();
        if (kw == "prefix") {
            std::string name = prefix_name();
            skip_ws();
            std::string iri = iriref();
            prefixes_[name] = iri;
        } else if (kw == "base") {
            base_ = iriref();
        } else {
            fail("unknown directive '" + kw + "'");
        }
        skip_ws();
        if (!sparql_style) expect('.');
    }

    std::string prefix_name() {
        std::string name;
        while (!at_end() && peek() != ':' && !str::is_space(peek())) {
            name.push_back(peek());
            advance();
        }
        expect(':');
        return name;
    }

    std::string iriref() {
        expect('<');
        std::string iri;
        while (!at_end() && peek() != '>') {
            if (peek() == '\n') fail("newline inside IRI");
            iri.push_back(peek());
            advance();
        }
        expect('>');
        if (!base_.empty() && iri.find(':') == std::string::npos) {
            if (auto abs = resolve_url(base_, iri)) return *abs;
        }
        return iri;
    }

    Term iri_or_pname() {
        if (peek() == '<') return Term::iri(iriref());
        // prefixed name
        std::string prefix;
        while (!at_end() && peek() != ':') {
            char c = peek();
            if (!pn_local_char(c)) fail("invalid character in prefixed name");
            prefix.push_back(c);
            advance();
        }
        expect(':');
        std::string local;
        while (!at_end() && pn_local_char(peek())) {
            local.push_back(peek());
            advance();
        }
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) fail("undefined prefix '" + prefix + ":'");
        return Term::iri(it->second + local);
    }

    Term blank_node() {
        advance();  // '_'
        expect(':');
        std::string label;
        while (!at_end() && pn_local_char(peek())) {
            label.push_back(peek());
            advance();
        }
        if (label.empty()) fail("empty blank node label");
        return Term::blank(label);
    }

    Term literal() {
        expect('"');
        std::string value;
        while (true) {
            if (at_end()) fail("unterminated string literal");
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                if (at_end()) fail("dangling escape");
                char e = peek();
                advance();
                switch (e) {
                    case 't': value.push_back('\t'); break;
                    case 'n': value.push_back('\n'); break;
                    case 'r': value.push_back('\r'); break;
                    case '"': value.push_back('"'); break;
                    case '\\': value.push_back('\\'); break;
                    case 'u': value += unicode_escape(4); break;
                    case 'U': value += unicode_escape(8); break;
                    default: fail(std::string("unknown escape '\\") + e + "'");
                }
            } else {
                value.push_back(c);
                advance();
            }
        }
        if (!at_end() && peek() == '^') {
            advance();
            expect('^');
            Term dt = iri_or_pname();
            return Term::typed(std::move(value), std::move(dt.lexical));
        }
        if (!at_end() && peek() == '@') {
            advance();
            std::string tag;
            while (!at_end() && (pn_local_char(peek()))) {
                tag.push_back(peek());
                advance();
            }
            if (tag.empty()) fail("empty language tag");
            return Term::tagged(std::move(value), std::move(tag));
        }
        return Term::literal(std::move(value));
    }

    std::string unicode_escape(int digits) {
        uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end()) fail("truncated unicode escape");
            char c = peek();
            advance();
            cp <<= 4;
            if (c >= '0' && c <= '9')
                cp |= uint32_t(c - '0');
            else if (c >= 'a' && c <= 'f')
                cp |= uint32_t(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                cp |= uint32_t(c - 'A' + 10);
            else
                fail("bad hex digit in unicode escape");
        }
        std::string out;
        append_utf8(out, cp);
        return out;
    }

    Term node(bool object_position) {
        char c = peek();
        if (c == '<') return iri_or_pname();
        if (c == '_' && peek_at(1) == ':') return blank_node();
        if (c == '"') {
            if (!object_position) fail("literal not allowed as subject");
            return literal();
        }
        // 'a' keyword handled by caller for verbs; here it must be a pname.
        return iri_or_pname();
    }

    Term verb() {
        if (peek() == 'a' && (str::is_space(peek_at(1)) || peek_at(1) == '<')) {
            advance();
            return Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
        }
        Term t = iri_or_pname();
        return t;
    }

    void statement(std::vector<Triple>& out) {
        Term subject = node(false);
        while (true) {
            skip_ws();
            Term predicate = verb();
            while (true) {
                skip_ws();
                Term object = node(true);
                out.push_back({subject, predicate, object});
                skip_ws();
                if (!at_end() && peek() == ',') {
                    advance();
                    continue;
                }
                break;
            }
            if (!at_end() && peek() == ';') {
                advance();
                skip_ws();
                if (!at_end() && peek() == '.') break;  // trailing ';'
                continue;
            }
            break;
        }
        skip_ws();
        expect('.');
    }

    std::string_view text_;
    std::string base_;
    size_t pos_ = 0;
    size_t line_ = 1;
    PrefixMap prefixes_;
};

bool valid_iri_for_output(std::string_view iri) {
    for (unsigned char c : iri) {
        if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
            c == '^' || c == '`' || c == '\\')
            return false;
    }
    return !iri.empty();
}

bool valid_blank_label(std::string_view label) {
    if (label.empty() || !pn_local_start(label[0])) return false;
    for (char c : label)
        if (!pn_local_char(c)) return false;
    return true;
}

std::string escape_literal(std::string_view v) {
    std::string out;
    out.reserve(v.size() + 2);
    for (unsigned char c : v) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04X", c);
                    out += buf;
                } else {
                    out.push_back(char(c));
                }
        }
    }
    return out;
}

std::string render_iri(const std::string& iri, const PrefixMap& prefixes) {
    const std::string* best_ns = nullptr;
    const std::string* best_name = nullptr;
    for (const auto& [name, ns] : prefixes) {
        if (ns.empty() || !str::starts_with(iri, ns)) continue;
        if (best_ns && ns.size() <= best_ns->size()) continue;
        std::string_view local = std::string_view(iri).substr(ns.size());
        bool ok = local.empty() || pn_local_start(local[0]);
        for (char c : local)
            if (!pn_local_char(c)) ok = false;
        if (!ok) continue;
        best_ns = &ns;
        best_name = &name;
    }
    if (best_ns) return *best_name + ":" + iri.substr(best_ns->size());
    if (!valid_iri_for_output(iri)) throw UnserializableTerm("<" + iri + ">");
    return "<" + iri + ">";
}

}  // namespace

std::vector<Triple> parse_n3(std::string_view text, const std::string& base_iri) {
    return N3Parser(text, base_iri).run();
}

void parse_n3_into(GraphStore& store, std::string_view text, const std::string& base_iri) {
    for (const Triple& t : parse_n3(text, base_iri)) store.insert(t);
}

std::string render_term(const Term& t, const PrefixMap& prefixes) {
    switch (t.kind) {
        case TermKind::Iri:
            return render_iri(t.lexical, prefixes);
        case TermKind::Blank:
            if (!valid_blank_label(t.lexical)) throw UnserializableTerm("_:" + t.lexical);
            return "_:" + t.lexical;
        case TermKind::Literal: {
            std::string out = "\"" + escape_literal(t.lexical) + "\"";
            if (!t.datatype.empty())
                out += "^^" + render_iri(t.datatype, prefixes);
            else if (!t.lang.empty())
                out += "@" + t.lang;
            return out;
        }
    }
    return {};
}

std::string render_term_nt(const Term& t) { return render_term(t, {}); }

std::string serialize_n3(const std::vector<Triple>& triples, const PrefixMap& prefixes) {
    std::string out;
    for (const auto& [name, ns] : prefixes) {
        if (!valid_iri_for_output(ns)) throw UnserializableTerm("<" + ns + ">");
        out += "@prefix " + name + ": <" + ns + "> .\n";
    }
    std::vector<std::array<std::string, 3>> lines;
    lines.reserve(triples.size());
    for (const Triple& t : triples) {
        lines.push_back({render_term(t.subject, prefixes), render_term(t.predicate, prefixes),
                         render_term(t.object, prefixes)});
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    for (const auto& l : lines) {
        out += l[0];
        out += ' ';
        out += l[1];
        out += ' ';
        out += l[2];
        out += " .\n";
    }
    return out;
}

std::string serialize_store(const GraphStore& store, const PrefixMap& prefixes) {
    std::vector<Triple> triples;
    triples.reserve(store.size());
    const TermPool& pool = store.pool();
    for (const IdTriple& t : store.triples())
        triples.push_back({pool.get(t[0]), pool.get(t[1]), pool.get(t[2])});
    return serialize_n3(triples, prefixes);
}

}  // namespace owa::rdf
