#include <algorithm>
#include <set>

#include "owa/errors.hpp"
#include "owa/query/ast.hpp"
#include "owa/util/strings.hpp"

namespace owa::query {

namespace {

bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
}

struct Token {
    enum class Kind {
        Eof,
        Iri,      // <...>
        Pname,    // prefix:local (text holds both parts)
        Var,      // ?x or $x (text without the sigil)
        String,   // "..." (text is the decoded value)
        Number,   // integer or decimal text
        Word,     // bare name / keyword
        Punct,    // one of {}().;,* and operators
    };
    Kind kind = Kind::Eof;
    std::string text;
    size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw QuerySyntaxError(current_.pos, expected);
    }

  private:
    void advance() {
        skip_ws();
        current_ = Token{};
        current_.pos = pos_;
        if (pos_ >= text_.size()) return;

        char c = text_[pos_];
        // '<' opens an IRI only when it is not the <= / < comparison
        bool iri_start = c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] != '=' &&
                         !str::is_space(text_[pos_ + 1]) && text_[pos_ + 1] != '?' &&
                         text_[pos_ + 1] != '$';
        if (iri_start) {
            size_t end = text_.find('>', pos_);
            if (end == std::string_view::npos) throw QuerySyntaxError(pos_, "unterminated IRI");
            current_.kind = Token::Kind::Iri;
            current_.text = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
            pos_ = end + 1;
            return;
        }
        if (c == '?' || c == '$') {
            size_t start = ++pos_;
            while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
            if (pos_ == start) throw QuerySyntaxError(start, "empty variable name");
            current_.kind = Token::Kind::Var;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (c == '"') {
            ++pos_;
            std::string value;
            while (true) {
                if (pos_ >= text_.size()) throw QuerySyntaxError(pos_, "unterminated string");
                char d = text_[pos_++];
                if (d == '"') break;
                if (d == '\\') {
                    if (pos_ >= text_.size()) throw QuerySyntaxError(pos_, "dangling escape");
                    char e = text_[pos_++];
                    switch (e) {
                        case 't': value.push_back('\t'); break;
                        case 'n': value.push_back('\n'); break;
                        case 'r': value.push_back('\r'); break;
                        case '"': value.push_back('"'); break;
                        case '\\': value.push_back('\\'); break;
                        default: throw QuerySyntaxError(pos_ - 1, "unknown string escape");
                    }
                } else {
                    value.push_back(d);
                }
            }
            current_.kind = Token::Kind::String;
            current_.text = std::move(value);
            return;
        }
        if ((c >= '0' && c <= '9') ||
            (c == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] >= '0' &&
             text_[pos_ + 1] <= '9')) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   ((text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '.'))
                ++pos_;
            current_.kind = Token::Kind::Number;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (name_char(c) && !(c >= '0' && c <= '9')) {
            size_t start = pos_;
            while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
            // prefixed name?
            if (pos_ < text_.size() && text_[pos_] == ':') {
                ++pos_;
                size_t local_start = pos_;
                while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
                current_.kind = Token::Kind::Pname;
                current_.text = std::string(text_.substr(start, pos_ - start));
                (void)local_start;
                return;
            }
            current_.kind = Token::Kind::Word;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (c == ':') {  // pname with empty prefix
            ++pos_;
            size_t start = pos_;
            while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
            current_.kind = Token::Kind::Pname;
            current_.text = ":" + std::string(text_.substr(start, pos_ - start));
            return;
        }
        // operators and punctuation
        static const char* two_char[] = {"&&", "||", "!=", "<=", ">=", "^^"};
        for (const char* op : two_char) {
            if (text_.substr(pos_, 2) == op) {
                current_.kind = Token::Kind::Punct;
                current_.text = op;
                pos_ += 2;
                return;
            }
        }
        current_.kind = Token::Kind::Punct;
        current_.text = std::string(1, c);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (str::is_space(c)) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    Token current_;
};

class Parser {
  public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Query run() {
        prologue();
        Query q = select_query(true);
        if (lex_.peek().kind != Token::Kind::Eof)
            lex_.fail("end of query (unsupported trailing construct '" + lex_.peek().text + "')");
        q.prefixes = prefixes_;
        return q;
    }

  private:
    Lexer lex_;
    rdf::PrefixMap prefixes_;

    static bool is_function_word(const std::string& w) {
        std::string lw = str::lowercase(w);
        return lw == "count" || lw == "year" || lw == "month" || lw == "day" || lw == "lang" ||
               lw == "str" || lw == "sum" || lw == "avg" || lw == "min" || lw == "max";
    }

    bool peek_word(std::string_view kw) const {
        const Token& t = lex_.peek();
        return t.kind == Token::Kind::Word && str::lowercase(t.text) == str::lowercase(kw);
    }

    bool accept_word(std::string_view kw) {
        if (!peek_word(kw)) return false;
        lex_.take();
        return true;
    }

    void expect_word(std::string_view kw) {
        if (!accept_word(kw)) lex_.fail("expected '" + std::string(kw) + "'");
    }

    bool peek_punct(std::string_view p) const {
        const Token& t = lex_.peek();
        return t.kind == Token::Kind::Punct && t.text == p;
    }

    bool accept_punct(std::string_view p) {
        if (!peek_punct(p)) return false;
        lex_.take();
        return true;
    }

    void expect_punct(std::string_view p) {
        if (!accept_punct(p)) lex_.fail("expected '" + std::string(p) + "'");
    }

    void prologue() {
        while (true) {
            if (peek_word("prefix")) {
                lex_.take();
                Token name = lex_.take();
                std::string prefix;
                if (name.kind == Token::Kind::Pname) {
                    // lexer folded "pre:" into a pname with empty local
                    prefix = name.text.substr(0, name.text.find(':'));
                } else {
                    lex_.fail("expected prefix declaration name");
                }
                Token iri = lex_.take();
                if (iri.kind != Token::Kind::Iri) lex_.fail("expected IRI in PREFIX");
                prefixes_[prefix] = iri.text;
            } else if (peek_word("base")) {
                lex_.take();
                Token iri = lex_.take();
                if (iri.kind != Token::Kind::Iri) lex_.fail("expected IRI in BASE");
                base_ = iri.text;
            } else {
                break;
            }
        }
    }

    std::string expand_pname(const Token& t) {
        size_t colon = t.text.find(':');
        std::string prefix = t.text.substr(0, colon);
        std::string local = t.text.substr(colon + 1);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end())
            throw QuerySyntaxError(t.pos, "undefined prefix '" + prefix + ":'");
        return it->second + local;
    }

    Query select_query(bool top_level) {
        Query q;
        expect_word("select");
        if (accept_word("distinct")) q.distinct = true;
        if (accept_punct("*")) {
            q.select_all = true;
        } else {
            while (true) {
                const Token& t = lex_.peek();
                if (t.kind == Token::Kind::Var) {
                    Token v = lex_.take();
                    auto e = std::make_shared<Expr>();
                    e->kind = ExprKind::Var;
                    e->name = v.text;
                    q.select_items.push_back({e, v.text});
                } else if (peek_punct("(")) {
                    lex_.take();
                    ExprPtr e = expression();
                    expect_word("as");
                    Token v = lex_.take();
                    if (v.kind != Token::Kind::Var) lex_.fail("expected variable after AS");
                    expect_punct(")");
                    q.select_items.push_back({e, v.text});
                } else if (t.kind == Token::Kind::Pname ||
                           (t.kind == Token::Kind::Word && is_function_word(t.text))) {
                    // bare expression column (the popularity query's division)
                    ExprPtr e = expression();
                    q.select_items.push_back({e, "expr" + std::to_string(q.select_items.size())});
                } else {
                    break;
                }
            }
            if (q.select_items.empty()) lex_.fail("expected select list or *");
        }
        if (peek_word("where")) lex_.take();
        q.where = group_graph_pattern();
        solution_modifiers(q);
        validate(q, top_level);
        return q;
    }

    GroupGraphPattern group_graph_pattern() {
        GroupGraphPattern g;
        expect_punct("{");
        while (!peek_punct("}")) {
            if (lex_.peek().kind == Token::Kind::Eof) lex_.fail("expected '}'");
            if (peek_word("filter")) {
                lex_.take();
                GroupElement e;
                e.kind = GroupElement::Kind::Filter;
                expect_punct("(");
                e.filter = expression();
                expect_punct(")");
                g.elements.push_back(std::move(e));
            } else if (peek_word("optional")) {
                lex_.take();
                GroupElement e;
                e.kind = GroupElement::Kind::Optional;
                e.group = std::make_shared<GroupGraphPattern>(group_graph_pattern());
                g.elements.push_back(std::move(e));
            } else if (peek_word("service")) {
                lex_.take();
                GroupElement e;
                e.kind = GroupElement::Kind::Service;
                Token t = lex_.take();
                if (t.kind == Token::Kind::Iri)
                    e.service_iri = t.text;
                else if (t.kind == Token::Kind::Pname)
                    e.service_iri = expand_pname(t);
                else
                    lex_.fail("SERVICE endpoint must be a constant IRI");
                e.kind = GroupElement::Kind::Service;
                e.group = std::make_shared<GroupGraphPattern>(group_graph_pattern());
                g.elements.push_back(std::move(e));
            } else if (peek_punct("{")) {
                // nested group: only subselects are in the subset
                GroupElement e;
                e.kind = GroupElement::Kind::SubSelect;
                size_t pos = lex_.peek().pos;
                lex_.take();
                if (!peek_word("select"))
                    throw QuerySyntaxError(pos, "only SELECT subqueries are supported in nested groups");
                e.subquery = std::make_shared<Query>(select_query(false));
                expect_punct("}");
                g.elements.push_back(std::move(e));
            } else if (peek_word("union")) {
                lex_.fail("UNION is not supported");
            } else if (peek_word("graph") || peek_word("minus") || peek_word("bind") ||
                       peek_word("values")) {
                lex_.fail("'" + str::lowercase(lex_.peek().text) + "' is not supported");
            } else {
                triples_block(g);
            }
            accept_punct(".");
        }
        expect_punct("}");
        // adjacent triples blocks form one BGP (join order spans statements)
        GroupGraphPattern merged;
        for (auto& e : g.elements) {
            if (e.kind == GroupElement::Kind::Triples && !merged.elements.empty() &&
                merged.elements.back().kind == GroupElement::Kind::Triples) {
                auto& back = merged.elements.back().triples;
                back.insert(back.end(), e.triples.begin(), e.triples.end());
            } else {
                merged.elements.push_back(std::move(e));
            }
        }
        return merged;
    }

    // TriplesBlock with ';' predicate lists, ',' object lists, and FILTER
    // allowed to trail a pattern without a terminating dot.
    void triples_block(GroupGraphPattern& g) {
        GroupElement block;
        block.kind = GroupElement::Kind::Triples;
        ExprPtr subject = term_or_var(false);
        while (true) {
            ExprPtr predicate = verb();
            while (true) {
                ExprPtr object = term_or_var(true);
                block.triples.push_back({subject, predicate, object});
                if (peek_word("filter")) {
                    // attach interleaved filters to the group, not the block
                    if (!block.triples.empty()) {
                        g.elements.push_back(block);
                        block.triples.clear();
                    }
                    lex_.take();
                    GroupElement f;
                    f.kind = GroupElement::Kind::Filter;
                    expect_punct("(");
                    f.filter = expression();
                    expect_punct(")");
                    g.elements.push_back(std::move(f));
                }
                if (accept_punct(",")) continue;
                break;
            }
            if (accept_punct(";")) {
                if (peek_punct(".") || peek_punct("}")) break;  // dangling ';'
                continue;
            }
            break;
        }
        if (!block.triples.empty()) g.elements.push_back(std::move(block));
    }

    ExprPtr verb() {
        if (peek_word("a")) {
            lex_.take();
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Constant;
            e->term = rdf::Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
            return e;
        }
        return term_or_var(false);
    }

    ExprPtr term_or_var(bool allow_literal) {
        const Token& t = lex_.peek();
        auto e = std::make_shared<Expr>();
        if (t.kind == Token::Kind::Var) {
            e->kind = ExprKind::Var;
            e->name = lex_.take().text;
            return e;
        }
        if (t.kind == Token::Kind::Iri) {
            e->kind = ExprKind::Constant;
            e->term = rdf::Term::iri(lex_.take().text);
            return e;
        }
        if (t.kind == Token::Kind::Pname) {
            Token p = lex_.take();
            e->kind = ExprKind::Constant;
            e->term = rdf::Term::iri(expand_pname(p));
            return e;
        }
        if (allow_literal &&
            (t.kind == Token::Kind::String || t.kind == Token::Kind::Number)) {
            e->kind = ExprKind::Constant;
            e->term = literal_term();
            return e;
        }
        lex_.fail("expected term or variable");
    }

    rdf::Term literal_term() {
        Token t = lex_.take();
        if (t.kind == Token::Kind::Number) {
            bool decimal = t.text.find('.') != std::string::npos;
            return rdf::Term::typed(t.text, decimal ? "http://www.w3.org/2001/XMLSchema#decimal"
                                                    : "http://www.w3.org/2001/XMLSchema#integer");
        }
        // string, maybe with ^^type or @lang
        if (peek_punct("^^")) {
            lex_.take();
            Token dt = lex_.take();
            std::string iri;
            if (dt.kind == Token::Kind::Iri)
                iri = dt.text;
            else if (dt.kind == Token::Kind::Pname)
                iri = expand_pname(dt);
            else
                lex_.fail("expected datatype IRI after ^^");
            return rdf::Term::typed(t.text, iri);
        }
        if (peek_punct("@")) {
            lex_.take();
            Token tag = lex_.take();
            if (tag.kind != Token::Kind::Word) lex_.fail("expected language tag");
            return rdf::Term::tagged(t.text, tag.text);
        }
        return rdf::Term::literal(t.text);
    }

    // precedence: || < && < comparison < additive < multiplicative < unary
    ExprPtr expression() { return or_expr(); }

    ExprPtr binary(const std::string& op, ExprPtr lhs, ExprPtr rhs) {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::Binary;
        e->name = op;
        e->args = {std::move(lhs), std::move(rhs)};
        return e;
    }

    ExprPtr or_expr() {
        ExprPtr lhs = and_expr();
        while (peek_punct("||")) {
            lex_.take();
            lhs = binary("||", lhs, and_expr());
        }
        return lhs;
    }

    ExprPtr and_expr() {
        ExprPtr lhs = rel_expr();
        while (peek_punct("&&")) {
            lex_.take();
            lhs = binary("&&", lhs, rel_expr());
        }
        return lhs;
    }

    ExprPtr rel_expr() {
        ExprPtr lhs = add_expr();
        static const char* ops[] = {"=", "!=", "<=", ">=", "<", ">"};
        for (const char* op : ops) {
            if (peek_punct(op)) {
                lex_.take();
                return binary(op, lhs, add_expr());
            }
        }
        return lhs;
    }

    ExprPtr add_expr() {
        ExprPtr lhs = mul_expr();
        while (peek_punct("+") || peek_punct("-")) {
            std::string op = lex_.take().text;
            lhs = binary(op, lhs, mul_expr());
        }
        return lhs;
    }

    ExprPtr mul_expr() {
        ExprPtr lhs = unary_expr();
        while (peek_punct("*") || peek_punct("/")) {
            std::string op = lex_.take().text;
            lhs = binary(op, lhs, unary_expr());
        }
        return lhs;
    }

    ExprPtr unary_expr() {
        if (peek_punct("!")) {
            lex_.take();
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Call;
            e->name = "!";
            e->args = {unary_expr()};
            return e;
        }
        if (peek_punct("-")) {
            size_t pos = lex_.peek().pos;
            lex_.take();
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Number)
                throw QuerySyntaxError(pos, "expected number after unary '-'");
            rdf::Term lit = literal_term();
            lit.lexical = "-" + lit.lexical;
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Constant;
            e->term = std::move(lit);
            return e;
        }
        return primary_expr();
    }

    ExprPtr primary_expr() {
        const Token& t = lex_.peek();
        if (peek_punct("(")) {
            lex_.take();
            ExprPtr e = expression();
            expect_punct(")");
            return e;
        }
        if (t.kind == Token::Kind::Var) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Var;
            e->name = lex_.take().text;
            return e;
        }
        if (t.kind == Token::Kind::String || t.kind == Token::Kind::Number) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Constant;
            e->term = literal_term();
            return e;
        }
        if (t.kind == Token::Kind::Iri) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Constant;
            e->term = rdf::Term::iri(lex_.take().text);
            return e;
        }
        if (t.kind == Token::Kind::Word) {
            std::string word = str::lowercase(t.text);
            if (word == "count") {
                size_t pos = t.pos;
                lex_.take();
                expect_punct("(");
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::Count;
                if (accept_word("distinct")) e->distinct = true;
                if (accept_punct("*")) {
                    if (e->distinct)
                        throw QuerySyntaxError(pos, "COUNT(DISTINCT *) is not supported");
                } else {
                    e->args.push_back(expression());
                }
                expect_punct(")");
                return e;
            }
            if (word == "sum" || word == "avg" || word == "min" || word == "max" ||
                word == "group_concat" || word == "sample")
                lex_.fail("aggregate '" + word + "' is not supported (COUNT only)");
            if (word == "year" || word == "month" || word == "day" || word == "lang" ||
                word == "str") {
                lex_.take();
                expect_punct("(");
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::Call;
                e->name = word;
                e->args.push_back(expression());
                expect_punct(")");
                return e;
            }
            lex_.fail("unsupported function or keyword '" + t.text + "'");
        }
        if (t.kind == Token::Kind::Pname) {
            Token p = lex_.take();
            std::string iri = expand_pname(p);
            if (peek_punct("(")) {  // cast: xsd:double(?x) etc.
                lex_.take();
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::Call;
                e->name = iri;
                e->args.push_back(expression());
                expect_punct(")");
                return e;
            }
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Constant;
            e->term = rdf::Term::iri(iri);
            return e;
        }
        lex_.fail("expected expression");
    }

    void solution_modifiers(Query& q) {
        if (peek_word("group")) {
            lex_.take();
            expect_word("by");
            while (true) {
                GroupKey key;
                if (peek_punct("(")) {
                    lex_.take();
                    key.expr = expression();
                    if (accept_word("as")) {
                        Token v = lex_.take();
                        if (v.kind != Token::Kind::Var) lex_.fail("expected variable after AS");
                        key.alias = v.text;
                    }
                    expect_punct(")");
                } else if (lex_.peek().kind == Token::Kind::Var ||
                           lex_.peek().kind == Token::Kind::Word ||
                           lex_.peek().kind == Token::Kind::Pname) {
                    key.expr = primary_expr();
                } else {
                    break;
                }
                q.group_by.push_back(std::move(key));
                if (lex_.peek().kind == Token::Kind::Eof) break;
                if (peek_word("order") || peek_word("limit") || peek_punct("}")) break;
            }
            if (q.group_by.empty()) lex_.fail("expected GROUP BY condition");
        }
        if (peek_word("order")) {
            lex_.take();
            expect_word("by");
            while (true) {
                OrderKey key;
                if (peek_word("asc") || peek_word("desc")) {
                    key.descending = str::lowercase(lex_.take().text) == "desc";
                    expect_punct("(");
                    key.expr = expression();
                    expect_punct(")");
                } else if (lex_.peek().kind == Token::Kind::Var) {
                    auto e = std::make_shared<Expr>();
                    e->kind = ExprKind::Var;
                    e->name = lex_.take().text;
                    key.expr = e;
                } else {
                    break;
                }
                q.order_by.push_back(std::move(key));
            }
            if (q.order_by.empty()) lex_.fail("expected ORDER BY condition");
        }
        if (peek_word("limit")) {
            lex_.take();
            Token n = lex_.take();
            long long v = -1;
            if (n.kind != Token::Kind::Number || !str::parse_i64(n.text, v) || v < 0)
                throw QuerySyntaxError(n.pos, "expected non-negative LIMIT count");
            q.limit = static_cast<uint64_t>(v);
        }
        if (peek_word("offset")) lex_.fail("OFFSET is not supported");
    }

    // Structural invariants the evaluator relies on.
    void validate(const Query& q, bool) {
        if (!q.group_by.empty()) {
            std::set<std::string> keys;
            for (const auto& k : q.group_by) {
                if (!k.alias.empty()) keys.insert(k.alias);
                if (k.expr->kind == ExprKind::Var) keys.insert(k.expr->name);
            }
            for (const auto& item : q.select_items) {
                if (item.expr->kind == ExprKind::Var && !keys.count(item.expr->name))
                    throw QuerySyntaxError(
                        0, "projected variable ?" + item.expr->name +
                               " must appear in GROUP BY");
            }
        }
    }

    std::string base_;
};

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).run(); }

}  // namespace owa::query
