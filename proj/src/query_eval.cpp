#include "owa/query/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "owa/errors.hpp"
#include "owa/rdf/n3.hpp"
#include "owa/util/civil_time.hpp"
#include "owa/util/strings.hpp"

namespace owa::query {

namespace {

using rdf::GraphStore;
using rdf::Term;
using rdf::TermId;
using rdf::TermKind;
using rdf::TermPool;

const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";

// A binding value: either an id into some store's pool or an owned term
// computed by an expression. Comparisons fall back to structural equality
// across pools.
struct EvalTerm {
    TermId id = rdf::kNoTerm;
    const TermPool* pool = nullptr;
    std::shared_ptr<const Term> owned;

    const Term& term() const { return owned ? *owned : pool->get(id); }
    static EvalTerm from_pool(const TermPool& p, TermId i) { return {i, &p, nullptr}; }
    static EvalTerm make(Term t) {
        return {rdf::kNoTerm, nullptr, std::make_shared<const Term>(std::move(t))};
    }
};

bool term_equal(const EvalTerm& a, const EvalTerm& b) {
    if (a.pool && a.pool == b.pool && !a.owned && !b.owned) return a.id == b.id;
    return a.term() == b.term();
}

size_t term_hash(const EvalTerm& t) { return rdf::TermHash{}(t.term()); }

using Cell = std::optional<EvalTerm>;
using Row = std::vector<Cell>;

struct Table {
    std::vector<std::string> vars;
    std::vector<Row> rows;

    int index_of(std::string_view name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }
    static Table unit() {
        Table t;
        t.rows.emplace_back();
        return t;
    }
};

// ---------------------------------------------------------------- values --

struct Value {
    bool err = true;
    EvalTerm t;
    static Value error() { return {}; }
    static Value of(EvalTerm e) { return {false, std::move(e)}; }
};

Value make_int(long long v) {
    return Value::of(EvalTerm::make(Term::typed(std::to_string(v), kXsd + "integer")));
}
Value make_double(double v) {
    return Value::of(EvalTerm::make(Term::typed(str::format_double(v), kXsd + "double")));
}
Value make_bool(bool v) {
    return Value::of(EvalTerm::make(Term::typed(v ? "true" : "false", kXsd + "boolean")));
}
Value make_string(std::string v) { return Value::of(EvalTerm::make(Term::literal(std::move(v)))); }

bool is_numeric_datatype(const std::string& dt) {
    return dt == kXsd + "integer" || dt == kXsd + "double" || dt == kXsd + "decimal" ||
           dt == kXsd + "float" || dt == kXsd + "long" || dt == kXsd + "int" ||
           dt == kXsd + "short" || dt == kXsd + "nonNegativeInteger" ||
           dt == kXsd + "positiveInteger";
}

// Plain literals that look like numbers are promoted in numeric contexts;
// the drugs query compares year(?date) with "1987".
std::optional<double> numeric_value(const Term& t) {
    if (t.kind != TermKind::Literal || !t.lang.empty()) return std::nullopt;
    bool typed_numeric = is_numeric_datatype(t.datatype);
    bool promotable = t.datatype.empty() || t.datatype == kXsd + "string";
    if (!typed_numeric && !promotable) return std::nullopt;
    const std::string& s = t.lexical;
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

std::optional<CivilTime> temporal_value(const Term& t) {
    if (t.kind != TermKind::Literal) return std::nullopt;
    if (t.datatype == kXsd + "date") return parse_xsd_date(t.lexical);
    if (t.datatype == kXsd + "dateTime") return parse_xsd_datetime(t.lexical);
    return std::nullopt;
}

bool is_stringish(const Term& t) {
    return t.kind == TermKind::Literal &&
           (t.datatype.empty() || t.datatype == kXsd + "string");
}

// SPARQL "=" with error-as-nullopt; mixed dates/dateTimes compare on the
// instant with xsd:date promoted to midnight.
std::optional<bool> equals(const Term& a, const Term& b) {
    if (a.kind != b.kind) {
        if (a.kind == TermKind::Literal || b.kind == TermKind::Literal) {
            // RDF term inequality between literal and non-literal
            return false;
        }
        return false;
    }
    if (a.kind == TermKind::Iri || a.kind == TermKind::Blank) return a.lexical == b.lexical;
    auto na = numeric_value(a), nb = numeric_value(b);
    if (na && nb) return *na == *nb;
    auto ta = temporal_value(a), tb = temporal_value(b);
    if (ta && tb) return ta->epoch_seconds() == tb->epoch_seconds();
    if (!a.lang.empty() || !b.lang.empty()) return a.lang == b.lang && a.lexical == b.lexical;
    if (is_stringish(a) && is_stringish(b)) return a.lexical == b.lexical;
    if (a == b) return true;
    if (a.datatype == b.datatype) return false;  // same unknown type, different lexical
    return std::nullopt;                         // incomparable typed literals
}

// Value-space "<": numerics, temporals, strings; everything else is a type
// error (nullopt).
std::optional<int> compare(const Term& a, const Term& b) {
    auto na = numeric_value(a), nb = numeric_value(b);
    if (na && nb) return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
    auto ta = temporal_value(a), tb = temporal_value(b);
    if (ta && tb) {
        auto ea = ta->epoch_seconds(), eb = tb->epoch_seconds();
        return ea < eb ? -1 : (ea > eb ? 1 : 0);
    }
    if (a.kind == TermKind::Literal && b.kind == TermKind::Literal && a.lang.empty() &&
        b.lang.empty() && is_stringish(a) && is_stringish(b)) {
        int c = a.lexical.compare(b.lexical);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return std::nullopt;
}

// Effective boolean value.
std::optional<bool> ebv(const Term& t) {
    if (t.kind != TermKind::Literal) return std::nullopt;
    if (t.datatype == kXsd + "boolean") {
        if (t.lexical == "true" || t.lexical == "1") return true;
        if (t.lexical == "false" || t.lexical == "0") return false;
        return std::nullopt;
    }
    if (auto n = numeric_value(t)) return *n != 0.0;
    if (is_stringish(t) || !t.lang.empty()) return !t.lexical.empty();
    return std::nullopt;
}

// ------------------------------------------------------------ expressions --

Value eval_expr(const Expr& e, const Row& row, const Table& table);

std::optional<bool> ebv_of(const Expr& e, const Row& row, const Table& table) {
    Value v = eval_expr(e, row, table);
    if (v.err) return std::nullopt;
    return ebv(v.t.term());
}

Value eval_call(const Expr& e, const Row& row, const Table& table) {
    if (e.name == "!") {
        auto b = ebv_of(*e.args[0], row, table);
        if (!b) return Value::error();
        return make_bool(!*b);
    }
    Value arg = eval_expr(*e.args[0], row, table);
    if (arg.err) return Value::error();
    const Term& t = arg.t.term();

    if (e.name == "year" || e.name == "month" || e.name == "day") {
        auto ct = temporal_value(t);
        if (!ct && t.kind == TermKind::Literal && t.datatype.empty())
            ct = parse_xsd_datetime(t.lexical);  // lenient on untyped dates
        if (!ct) return Value::error();
        if (e.name == "year") return make_int(ct->year);
        if (e.name == "month") return make_int(ct->month);
        return make_int(ct->day);
    }
    if (e.name == "lang") {
        if (t.kind != TermKind::Literal) return Value::error();
        return make_string(t.lang);
    }
    if (e.name == "str") {
        return make_string(t.lexical);
    }
    if (e.name == kXsd + "double" || e.name == kXsd + "float" || e.name == kXsd + "decimal") {
        auto n = numeric_value(t);
        if (!n) return Value::error();
        return make_double(*n);
    }
    if (e.name == kXsd + "integer" || e.name == kXsd + "int" || e.name == kXsd + "long") {
        auto n = numeric_value(t);
        if (!n) return Value::error();
        return make_int(static_cast<long long>(*n));
    }
    if (e.name == kXsd + "string") {
        return make_string(t.lexical);
    }
    return Value::error();
}

Value eval_binary(const Expr& e, const Row& row, const Table& table) {
    const std::string& op = e.name;
    if (op == "&&" || op == "||") {
        auto a = ebv_of(*e.args[0], row, table);
        auto b = ebv_of(*e.args[1], row, table);
        if (op == "&&") {
            if (a && !*a) return make_bool(false);
            if (b && !*b) return make_bool(false);
            if (a && b) return make_bool(*a && *b);
            return Value::error();
        }
        if (a && *a) return make_bool(true);
        if (b && *b) return make_bool(true);
        if (a && b) return make_bool(*a || *b);
        return Value::error();
    }

    Value lhs = eval_expr(*e.args[0], row, table);
    Value rhs = eval_expr(*e.args[1], row, table);
    if (lhs.err || rhs.err) return Value::error();
    const Term& a = lhs.t.term();
    const Term& b = rhs.t.term();

    if (op == "=" || op == "!=") {
        auto eq = equals(a, b);
        if (!eq) return Value::error();
        return make_bool(op == "=" ? *eq : !*eq);
    }
    if (op == "<" || op == ">" || op == "<=" || op == ">=") {
        auto c = compare(a, b);
        if (!c) return Value::error();
        if (op == "<") return make_bool(*c < 0);
        if (op == ">") return make_bool(*c > 0);
        if (op == "<=") return make_bool(*c <= 0);
        return make_bool(*c >= 0);
    }
    // arithmetic
    auto na = numeric_value(a), nb = numeric_value(b);
    if (!na || !nb) return Value::error();
    bool both_int = a.datatype == kXsd + "integer" && b.datatype == kXsd + "integer";
    if (op == "+") return both_int ? make_int((long long)(*na + *nb)) : make_double(*na + *nb);
    if (op == "-") return both_int ? make_int((long long)(*na - *nb)) : make_double(*na - *nb);
    if (op == "*") return both_int ? make_int((long long)(*na * *nb)) : make_double(*na * *nb);
    if (op == "/") {
        if (*nb == 0.0) return Value::error();
        return make_double(*na / *nb);
    }
    return Value::error();
}

Value eval_expr(const Expr& e, const Row& row, const Table& table) {
    switch (e.kind) {
        case ExprKind::Var: {
            int i = table.index_of(e.name);
            if (i < 0 || !row[i]) return Value::error();
            return Value::of(*row[i]);
        }
        case ExprKind::Constant:
            return Value::of(EvalTerm::make(e.term));
        case ExprKind::Call:
            return eval_call(e, row, table);
        case ExprKind::Binary:
            return eval_binary(e, row, table);
        case ExprKind::Count:
            return Value::error();  // aggregates are handled by the grouping stage
    }
    return Value::error();
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::Var) out.insert(e.name);
    for (const auto& a : e.args) collect_vars(*a, out);
}

// ------------------------------------------------------------------ joins --

std::vector<std::pair<int, int>> shared_columns(const Table& a, const Table& b) {
    std::vector<std::pair<int, int>> shared;
    for (size_t i = 0; i < b.vars.size(); ++i) {
        int j = a.index_of(b.vars[i]);
        if (j >= 0) shared.push_back({j, static_cast<int>(i)});
    }
    return shared;
}

bool compatible(const Row& left, const Row& right, const std::vector<std::pair<int, int>>& shared) {
    for (auto [li, ri] : shared) {
        if (left[li] && right[ri] && !term_equal(*left[li], *right[ri])) return false;
    }
    return true;
}

Row merge_rows(const Row& left, const Row& right, const Table&,
               const std::vector<int>& right_new_cols, size_t left_width,
               const std::vector<std::pair<int, int>>& shared) {
    Row out = left;
    out.resize(left_width + right_new_cols.size());
    // a shared var unbound on the left takes the right's value
    for (auto [li, ri] : shared)
        if (!out[li] && right[ri]) out[li] = right[ri];
    for (size_t k = 0; k < right_new_cols.size(); ++k)
        out[left_width + k] = right[right_new_cols[k]];
    return out;
}

Table join(const Table& left, const Table& right, bool left_outer) {
    auto shared = shared_columns(left, right);
    std::vector<int> right_new_cols;
    Table out;
    out.vars = left.vars;
    for (size_t i = 0; i < right.vars.size(); ++i) {
        if (left.index_of(right.vars[i]) < 0) {
            right_new_cols.push_back(static_cast<int>(i));
            out.vars.push_back(right.vars[i]);
        }
    }

    // Hash join when every shared column is bound on both sides; otherwise
    // the general compatibility scan.
    bool hashable = !shared.empty();
    auto all_bound = [&](const std::vector<Row>& rows, auto col_of) {
        for (const Row& r : rows)
            for (auto [li, ri] : shared)
                if (!r[col_of(li, ri)]) return false;
        return true;
    };
    if (hashable)
        hashable = all_bound(left.rows, [](int li, int) { return li; }) &&
                   all_bound(right.rows, [](int, int ri) { return ri; });

    if (hashable) {
        auto key_hash = [&](const Row& r, bool is_left) {
            size_t h = 0;
            for (auto [li, ri] : shared)
                h = h * 31 + term_hash(*r[is_left ? li : ri]);
            return h;
        };
        std::unordered_map<size_t, std::vector<size_t>> buckets;
        for (size_t i = 0; i < right.rows.size(); ++i)
            buckets[key_hash(right.rows[i], false)].push_back(i);
        for (const Row& l : left.rows) {
            bool matched = false;
            auto it = buckets.find(key_hash(l, true));
            if (it != buckets.end()) {
                for (size_t ri_row : it->second) {
                    const Row& r = right.rows[ri_row];
                    if (!compatible(l, r, shared)) continue;
                    matched = true;
                    out.rows.push_back(merge_rows(l, r, right, right_new_cols, left.vars.size(), shared));
                }
            }
            if (!matched && left_outer) {
                Row padded = l;
                padded.resize(left.vars.size() + right_new_cols.size());
                out.rows.push_back(std::move(padded));
            }
        }
        return out;
    }

    for (const Row& l : left.rows) {
        bool matched = false;
        for (const Row& r : right.rows) {
            if (!compatible(l, r, shared)) continue;
            matched = true;
            out.rows.push_back(merge_rows(l, r, right, right_new_cols, left.vars.size(), shared));
        }
        if (!matched && left_outer) {
            Row padded = l;
            padded.resize(left.vars.size() + right_new_cols.size());
            out.rows.push_back(std::move(padded));
        }
    }
    return out;
}

// -------------------------------------------------------------- evaluator --

struct PlanNote {
    std::string text;
};

class Evaluator {
  public:
    Evaluator(const GraphStore& store, const ServiceRegistry& registry, EvalOptions options)
        : store_(store), registry_(registry), options_(options) {}

    ResultTable run(const Query& q) {
        Table t = eval_query(q, store_);
        ResultTable out;
        out.header = t.vars;
        out.rows.reserve(t.rows.size());
        for (const Row& r : t.rows) {
            std::vector<std::optional<Term>> row;
            row.reserve(r.size());
            for (const Cell& c : r) {
                if (c)
                    row.emplace_back(c->term());
                else
                    row.emplace_back(std::nullopt);
            }
            out.rows.push_back(std::move(row));
        }
        return out;
    }

  private:
    const GraphStore& store_;
    const ServiceRegistry& registry_;
    EvalOptions options_;

    // --- BGP ---

    static bool pattern_slot(const ExprPtr& e, const GraphStore& target,
                             std::optional<TermId>& constant, std::string* var) {
        if (e->kind == ExprKind::Var) {
            *var = e->name;
            return true;
        }
        auto id = target.pool().find(e->term);
        if (!id) return false;  // constant absent from this store: no matches
        constant = *id;
        return true;
    }

    // Join order: fewest unbound variables first, then smallest index range,
    // then query order. Deterministic.
    std::vector<size_t> plan_order(const std::vector<TriplePattern>& patterns,
                                   std::set<std::string> bound, const GraphStore& target) const {
        std::vector<size_t> order;
        std::vector<bool> used(patterns.size(), false);
        for (size_t step = 0; step < patterns.size(); ++step) {
            size_t best = patterns.size();
            std::tuple<int, size_t, size_t> best_cost{4, SIZE_MAX, SIZE_MAX};
            for (size_t i = 0; i < patterns.size(); ++i) {
                if (used[i]) continue;
                int free_vars = 0;
                GraphStore::Pattern probe;
                auto consider = [&](const ExprPtr& e, std::optional<TermId>& slot) {
                    if (e->kind == ExprKind::Var) {
                        if (!bound.count(e->name)) ++free_vars;
                    } else if (auto id = target.pool().find(e->term)) {
                        slot = *id;
                    }
                };
                consider(patterns[i].s, probe.s);
                consider(patterns[i].p, probe.p);
                consider(patterns[i].o, probe.o);
                std::tuple<int, size_t, size_t> cost{free_vars, target.count(probe), i};
                if (cost < best_cost) {
                    best_cost = cost;
                    best = i;
                }
            }
            order.push_back(best);
            used[best] = true;
            auto bind = [&](const ExprPtr& e) {
                if (e->kind == ExprKind::Var) bound.insert(e->name);
            };
            bind(patterns[best].s);
            bind(patterns[best].p);
            bind(patterns[best].o);
        }
        return order;
    }

    Table extend_with_pattern(Table table, const TriplePattern& p, const GraphStore& target) {
        // slot analysis
        std::array<const ExprPtr*, 3> exprs{&p.s, &p.p, &p.o};
        std::array<std::optional<TermId>, 3> constants;
        std::array<int, 3> var_cols{-1, -1, -1};     // existing column
        std::array<std::string, 3> var_names;
        std::array<int, 3> new_var_slot{-1, -1, -1};  // output column for fresh vars

        Table out;
        out.vars = table.vars;
        for (int k = 0; k < 3; ++k) {
            const ExprPtr& e = *exprs[k];
            if (e->kind == ExprKind::Var) {
                var_names[k] = e->name;
                var_cols[k] = table.index_of(e->name);
                if (var_cols[k] < 0) {
                    // repeated fresh var in one pattern shares one new column
                    bool repeated = false;
                    for (int j = 0; j < k; ++j)
                        if (new_var_slot[j] >= 0 && var_names[j] == e->name) {
                            new_var_slot[k] = new_var_slot[j];
                            repeated = true;
                        }
                    if (!repeated) {
                        new_var_slot[k] = static_cast<int>(out.vars.size());
                        out.vars.push_back(e->name);
                    }
                }
            } else {
                auto id = target.pool().find(e->term);
                if (!id) return out;  // constant not present: empty result
                constants[k] = *id;
            }
        }

        const TermPool& target_pool = target.pool();
        for (const Row& row : table.rows) {
            GraphStore::Pattern probe;
            std::array<std::optional<TermId>*, 3> slots{&probe.s, &probe.p, &probe.o};
            bool row_ok = true;
            for (int k = 0; k < 3 && row_ok; ++k) {
                if (constants[k]) {
                    *slots[k] = constants[k];
                } else if (var_cols[k] >= 0 && row[var_cols[k]]) {
                    const EvalTerm& bound = *row[var_cols[k]];
                    if (bound.pool == &target_pool && !bound.owned) {
                        *slots[k] = bound.id;
                    } else if (auto id = target_pool.find(bound.term())) {
                        *slots[k] = *id;
                    } else {
                        row_ok = false;  // bound value cannot occur in this store
                    }
                }
            }
            if (!row_ok) continue;

            target.for_each(probe, [&](const rdf::IdTriple& t) {
                // repeated-variable consistency within the pattern
                for (int k = 0; k < 3; ++k)
                    for (int j = k + 1; j < 3; ++j)
                        if (!var_names[k].empty() && var_names[k] == var_names[j] &&
                            !slots[k]->has_value() && t[k] != t[j])
                            return;
                Row extended = row;
                extended.resize(out.vars.size());
                for (int k = 0; k < 3; ++k) {
                    if (new_var_slot[k] >= 0)
                        extended[new_var_slot[k]] = EvalTerm::from_pool(target_pool, t[k]);
                }
                out.rows.push_back(std::move(extended));
            });
        }
        return out;
    }

    Table eval_bgp(Table table, const std::vector<TriplePattern>& patterns,
                   const GraphStore& target) {
        std::vector<size_t> order;
        if (options_.keep_pattern_order) {
            for (size_t i = 0; i < patterns.size(); ++i) order.push_back(i);
        } else {
            std::set<std::string> bound(table.vars.begin(), table.vars.end());
            order = plan_order(patterns, std::move(bound), target);
        }
        for (size_t i : order) table = extend_with_pattern(std::move(table), patterns[i], target);
        return table;
    }

    // --- groups ---

    Table eval_group(const GroupGraphPattern& group, const GraphStore& target) {
        Table table = Table::unit();
        struct PendingFilter {
            const Expr* expr;
            std::set<std::string> vars;
            bool applied = false;
        };
        std::vector<PendingFilter> filters;

        auto try_apply_filters = [&](bool force) {
            for (auto& f : filters) {
                if (f.applied) continue;
                if (!force) {
                    bool all_in_scope = true;
                    for (const auto& v : f.vars)
                        if (table.index_of(v) < 0) all_in_scope = false;
                    if (!all_in_scope) continue;
                }
                std::vector<Row> kept;
                kept.reserve(table.rows.size());
                for (Row& row : table.rows) {
                    Value v = eval_expr(*f.expr, row, table);
                    if (!v.err) {
                        auto b = ebv(v.t.term());
                        if (b && *b) kept.push_back(std::move(row));
                    }
                }
                table.rows = std::move(kept);
                f.applied = true;
            }
        };

        for (const GroupElement& e : group.elements) {
            switch (e.kind) {
                case GroupElement::Kind::Triples:
                    table = eval_bgp(std::move(table), e.triples, target);
                    break;
                case GroupElement::Kind::Filter: {
                    PendingFilter f;
                    f.expr = e.filter.get();
                    collect_vars(*e.filter, f.vars);
                    filters.push_back(std::move(f));
                    break;
                }
                case GroupElement::Kind::Optional: {
                    Table right = eval_group(*e.group, target);
                    table = join(table, right, /*left_outer=*/true);
                    break;
                }
                case GroupElement::Kind::Service: {
                    const GraphStore* svc = registry_.find(e.service_iri);
                    if (!svc) throw UnregisteredService(e.service_iri);
                    Table right = eval_group(*e.group, *svc);
                    table = join(table, right, /*left_outer=*/false);
                    break;
                }
                case GroupElement::Kind::SubSelect: {
                    Table right = eval_query(*e.subquery, target);
                    table = join(table, right, /*left_outer=*/false);
                    break;
                }
            }
            try_apply_filters(false);
        }
        try_apply_filters(true);
        return table;
    }

    // --- grouping / projection / modifiers ---

    static bool has_aggregate(const Query& q) {
        for (const auto& item : q.select_items)
            if (item.expr->is_aggregate()) return true;
        return false;
    }

    Value eval_aggregate(const Expr& agg, const std::vector<const Row*>& rows,
                         const Table& table) {
        // COUNT over a group
        if (agg.args.empty()) {  // COUNT(*)
            return make_int(static_cast<long long>(rows.size()));
        }
        const Expr& arg = *agg.args[0];
        if (agg.distinct) {
            std::unordered_map<size_t, std::vector<EvalTerm>> set;
            size_t count = 0;
            for (const Row* r : rows) {
                Value v = eval_expr(arg, *r, table);
                if (v.err) continue;
                auto& bucket = set[term_hash(v.t)];
                bool dup = false;
                for (const auto& s : bucket)
                    if (term_equal(s, v.t)) dup = true;
                if (!dup) {
                    bucket.push_back(v.t);
                    ++count;
                }
            }
            return make_int(static_cast<long long>(count));
        }
        long long count = 0;
        for (const Row* r : rows) {
            Value v = eval_expr(arg, *r, table);
            if (!v.err) ++count;
        }
        return make_int(count);
    }

    Table project(const Query& q, Table table) {
        // GROUP BY aliases become real columns before grouping
        std::vector<std::string> key_cols;
        for (const auto& key : q.group_by) {
            if (!key.alias.empty()) {
                int existing = table.index_of(key.alias);
                if (existing < 0) {
                    table.vars.push_back(key.alias);
                    for (Row& row : table.rows) {
                        Value v = eval_expr(*key.expr, row, table);
                        row.push_back(v.err ? Cell{} : Cell{v.t});
                    }
                }
                key_cols.push_back(key.alias);
            }
        }

        bool grouped = !q.group_by.empty();
        bool aggregating = grouped || has_aggregate(q);

        if (!aggregating) {
            if (q.select_all) return table;
            Table out;
            for (const auto& item : q.select_items) out.vars.push_back(item.alias);
            for (const Row& row : table.rows) {
                Row projected;
                projected.reserve(q.select_items.size());
                for (const auto& item : q.select_items) {
                    Value v = eval_expr(*item.expr, row, table);
                    projected.push_back(v.err ? Cell{} : Cell{v.t});
                }
                out.rows.push_back(std::move(projected));
            }
            return out;
        }

        // group key per row: evaluated group expressions (aliased ones read
        // their freshly added column)
        struct Group {
            std::vector<const Row*> rows;
        };
        std::unordered_map<size_t, std::vector<std::pair<std::vector<Cell>, Group>>> groups;
        // first-seen order, stable against bucket reallocation
        std::vector<std::pair<size_t, size_t>> group_refs;  // (hash, index in bucket)

        auto key_of = [&](const Row& row) {
            std::vector<Cell> key;
            for (const auto& gk : q.group_by) {
                if (!gk.alias.empty()) {
                    key.push_back(row[table.index_of(gk.alias)]);
                } else {
                    Value v = eval_expr(*gk.expr, row, table);
                    key.push_back(v.err ? Cell{} : Cell{v.t});
                }
            }
            return key;
        };
        auto key_hash = [&](const std::vector<Cell>& key) {
            size_t h = 1469598103934665603ull;
            for (const Cell& c : key) h = h * 1099511628211ull + (c ? term_hash(*c) : 0x9e37ull);
            return h;
        };
        auto key_eq = [&](const std::vector<Cell>& a, const std::vector<Cell>& b) {
            if (a.size() != b.size()) return false;
            for (size_t i = 0; i < a.size(); ++i) {
                if (a[i].has_value() != b[i].has_value()) return false;
                if (a[i] && !term_equal(*a[i], *b[i])) return false;
            }
            return true;
        };

        if (!grouped) {
            // one implicit group; empty input stays empty by contract
            if (table.rows.empty()) {
                Table out;
                for (const auto& item : q.select_items) out.vars.push_back(item.alias);
                return out;
            }
            Table out;
            for (const auto& item : q.select_items) out.vars.push_back(item.alias);
            std::vector<const Row*> all;
            all.reserve(table.rows.size());
            for (const Row& r : table.rows) all.push_back(&r);
            Row projected;
            for (const auto& item : q.select_items) {
                Value v = item.expr->is_aggregate() ? eval_aggregate(*item.expr, all, table)
                                                    : eval_expr(*item.expr, *all[0], table);
                projected.push_back(v.err ? Cell{} : Cell{v.t});
            }
            out.rows.push_back(std::move(projected));
            return out;
        }

        for (const Row& row : table.rows) {
            auto key = key_of(row);
            size_t h = key_hash(key);
            auto& bucket = groups[h];
            bool found = false;
            for (auto& [k, g] : bucket) {
                if (key_eq(k, key)) {
                    g.rows.push_back(&row);
                    found = true;
                    break;
                }
            }
            if (!found) {
                bucket.push_back({std::move(key), Group{{&row}}});
                group_refs.push_back({h, bucket.size() - 1});
            }
        }

        Table out;
        for (const auto& item : q.select_items) out.vars.push_back(item.alias);
        for (auto [h, idx] : group_refs) {
            const Group& g = groups[h][idx].second;
            Row projected;
            for (const auto& item : q.select_items) {
                Value v = item.expr->is_aggregate()
                              ? eval_aggregate(*item.expr, g.rows, table)
                              : eval_expr(*item.expr, *g.rows.front(), table);
                projected.push_back(v.err ? Cell{} : Cell{v.t});
            }
            out.rows.push_back(std::move(projected));
        }
        return out;
    }

    // canonical cell rendering: kind digit, lexical, datatype, lang joined
    // with 0x1f, cells joined with 0x1e (the deterministic tie-break order)
    static std::string row_bytes(const Row& row) {
        std::string out;
        for (const Cell& c : row) {
            if (c) {
                const Term& t = c->term();
                out += std::to_string(int(t.kind));
                out += '\x1f';
                out += t.lexical;
                out += '\x1f';
                out += t.datatype;
                out += '\x1f';
                out += t.lang;
            }
            out += '\x1e';
        }
        return out;
    }

    // ORDER BY total order: unbound < blank < IRI < literal; literals by
    // value space where comparable.
    static int order_compare_terms(const Term& a, const Term& b) {
        auto rank = [](const Term& t) {
            switch (t.kind) {
                case TermKind::Blank: return 1;
                case TermKind::Iri: return 2;
                case TermKind::Literal: return 3;
            }
            return 4;
        };
        int ra = rank(a), rb = rank(b);
        if (ra != rb) return ra < rb ? -1 : 1;
        if (a.kind != TermKind::Literal) return a.lexical.compare(b.lexical) < 0   ? -1
                                                 : a.lexical.compare(b.lexical) > 0 ? 1
                                                                                    : 0;
        auto na = numeric_value(a), nb = numeric_value(b);
        int klass_a = na ? 0 : (temporal_value(a) ? 1 : 2);
        int klass_b = nb ? 0 : (temporal_value(b) ? 1 : 2);
        if (klass_a != klass_b) return klass_a < klass_b ? -1 : 1;
        if (na && nb && *na != *nb) return *na < *nb ? -1 : 1;
        if (klass_a == 1) {
            auto ea = temporal_value(a)->epoch_seconds(), eb = temporal_value(b)->epoch_seconds();
            if (ea != eb) return ea < eb ? -1 : 1;
        }
        auto ta = std::tie(a.lexical, a.datatype, a.lang);
        auto tb = std::tie(b.lexical, b.datatype, b.lang);
        return ta < tb ? -1 : (tb < ta ? 1 : 0);
    }

    void order_and_limit(const Query& q, Table& table) {
        if (!q.order_by.empty()) {
            std::vector<std::pair<Row, std::vector<Cell>>> keyed;
            keyed.reserve(table.rows.size());
            for (Row& row : table.rows) {
                std::vector<Cell> keys;
                for (const auto& ok : q.order_by) {
                    Value v = eval_expr(*ok.expr, row, table);
                    keys.push_back(v.err ? Cell{} : Cell{v.t});
                }
                keyed.push_back({std::move(row), std::move(keys)});
            }
            std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
                for (size_t i = 0; i < q.order_by.size(); ++i) {
                    const Cell& a = x.second[i];
                    const Cell& b = y.second[i];
                    int c;
                    if (!a && !b)
                        c = 0;
                    else if (!a)
                        c = -1;  // unbound sorts first
                    else if (!b)
                        c = 1;
                    else
                        c = order_compare_terms(a->term(), b->term());
                    if (q.order_by[i].descending) c = -c;
                    if (c != 0) return c < 0;
                }
                return row_bytes(x.first) < row_bytes(y.first);  // deterministic ties
            });
            table.rows.clear();
            for (auto& [row, keys] : keyed) table.rows.push_back(std::move(row));
        }
        if (q.limit && table.rows.size() > *q.limit) table.rows.resize(*q.limit);
    }

    Table eval_query(const Query& q, const GraphStore& target) {
        Table t = eval_group(q.where, target);
        t = project(q, std::move(t));
        if (q.distinct) {
            std::set<std::string> seen;
            std::vector<Row> unique_rows;
            for (Row& row : t.rows) {
                std::string key = row_bytes(row);
                if (seen.insert(std::move(key)).second) unique_rows.push_back(std::move(row));
            }
            t.rows = std::move(unique_rows);
        }
        order_and_limit(q, t);
        return t;
    }
};

}  // namespace

void ServiceRegistry::register_service(const std::string& iri,
                                       std::shared_ptr<const rdf::GraphStore> store) {
    stores_[iri] = std::move(store);
}

const rdf::GraphStore* ServiceRegistry::find(const std::string& iri) const {
    auto it = stores_.find(iri);
    return it == stores_.end() ? nullptr : it->second.get();
}

std::vector<std::string> ServiceRegistry::iris() const {
    std::vector<std::string> out;
    for (const auto& [iri, store] : stores_) out.push_back(iri);
    return out;
}

ResultTable evaluate(const Query& q, const rdf::GraphStore& store, const ServiceRegistry& registry,
                     const EvalOptions& options) {
    return Evaluator(store, registry, options).run(q);
}

// ----------------------------------------------------------------- explain --

namespace {

std::string render_pattern_expr(const ExprPtr& e) {
    if (e->kind == ExprKind::Var) return "?" + e->name;
    return rdf::render_term_nt(e->term);
}

void explain_group(const GroupGraphPattern& g, const rdf::GraphStore* store, int depth,
                   std::string& out) {
    std::string pad(static_cast<size_t>(depth) * 2, ' ');
    for (const GroupElement& e : g.elements) {
        switch (e.kind) {
            case GroupElement::Kind::Triples: {
                out += pad + "bgp:\n";
                // mirror the evaluator's ordering heuristic
                std::set<std::string> bound;
                std::vector<bool> used(e.triples.size(), false);
                for (size_t step = 0; step < e.triples.size(); ++step) {
                    size_t best = 0;
                    std::tuple<int, size_t, size_t> best_cost{4, SIZE_MAX, SIZE_MAX};
                    for (size_t i = 0; i < e.triples.size(); ++i) {
                        if (used[i]) continue;
                        int free_vars = 0;
                        rdf::GraphStore::Pattern probe;
                        auto consider = [&](const ExprPtr& x, std::optional<rdf::TermId>& slot) {
                            if (x->kind == ExprKind::Var) {
                                if (!bound.count(x->name)) ++free_vars;
                            } else if (store) {
                                if (auto id = store->pool().find(x->term)) slot = *id;
                            }
                        };
                        consider(e.triples[i].s, probe.s);
                        consider(e.triples[i].p, probe.p);
                        consider(e.triples[i].o, probe.o);
                        size_t est = store ? store->count(probe) : 0;
                        std::tuple<int, size_t, size_t> cost{free_vars, est, i};
                        if (cost < best_cost) {
                            best_cost = cost;
                            best = i;
                        }
                    }
                    used[best] = true;
                    const TriplePattern& p = e.triples[best];
                    rdf::GraphStore::Pattern shape;
                    auto mark = [&](const ExprPtr& x, std::optional<rdf::TermId>& slot) {
                        if (x->kind != ExprKind::Var)
                            slot = 0;
                        else if (bound.count(x->name))
                            slot = 0;
                    };
                    mark(p.s, shape.s);
                    mark(p.p, shape.p);
                    mark(p.o, shape.o);
                    const char* index = "scan";
                    if (store) {
                        switch (store->index_for(shape)) {
                            case rdf::GraphStore::IndexChoice::Spo: index = "SPO"; break;
                            case rdf::GraphStore::IndexChoice::Pos: index = "POS"; break;
                            case rdf::GraphStore::IndexChoice::Osp: index = "OSP"; break;
                            case rdf::GraphStore::IndexChoice::Scan: index = "scan"; break;
                        }
                    } else {
                        rdf::GraphStore empty;
                        switch (empty.index_for(shape)) {
                            case rdf::GraphStore::IndexChoice::Spo: index = "SPO"; break;
                            case rdf::GraphStore::IndexChoice::Pos: index = "POS"; break;
                            case rdf::GraphStore::IndexChoice::Osp: index = "OSP"; break;
                            case rdf::GraphStore::IndexChoice::Scan: index = "scan"; break;
                        }
                    }
                    out += pad + "  " + std::to_string(step + 1) + ". " +
                           render_pattern_expr(p.s) + " " + render_pattern_expr(p.p) + " " +
                           render_pattern_expr(p.o) + "  [index: " + index;
                    if (store) out += ", est: " + std::to_string(std::get<1>(best_cost));
                    out += "]\n";
                    auto bind = [&](const ExprPtr& x) {
                        if (x->kind == ExprKind::Var) bound.insert(x->name);
                    };
                    bind(p.s);
                    bind(p.p);
                    bind(p.o);
                }
                break;
            }
            case GroupElement::Kind::Filter:
                out += pad + "filter\n";
                break;
            case GroupElement::Kind::Optional:
                out += pad + "optional:\n";
                explain_group(*e.group, store, depth + 1, out);
                break;
            case GroupElement::Kind::Service:
                out += pad + "service <" + e.service_iri + ">:\n";
                explain_group(*e.group, nullptr, depth + 1, out);
                break;
            case GroupElement::Kind::SubSelect:
                out += pad + "subselect:\n";
                explain_group(e.subquery->where, store, depth + 1, out);
                break;
        }
    }
}

}  // namespace

std::string explain(const Query& q, const rdf::GraphStore& store) {
    std::string out = "select";
    if (q.distinct) out += " distinct";
    out += ":\n";
    explain_group(q.where, &store, 1, out);
    return out;
}

std::string explain(const Query& q) {
    std::string out = "select";
    if (q.distinct) out += " distinct";
    out += ":\n";
    explain_group(q.where, nullptr, 1, out);
    return out;
}

// --------------------------------------------------------------- rendering --

// literals show their lexical form; IRIs compress under the prefixes when
// possible (matching the CSV-results convention of plain values)
static std::string render_cell(const std::optional<rdf::Term>& cell,
                               const rdf::PrefixMap& prefixes, bool plain_iris) {
    if (!cell) return "";
    if (cell->is_literal()) return cell->lexical;
    if (cell->is_blank()) return "_:" + cell->lexical;
    if (plain_iris) return cell->lexical;
    try {
        return rdf::render_term(*cell, prefixes);
    } catch (const UnserializableTerm&) {
        return cell->lexical;
    }
}

std::string render_table(const ResultTable& t, const rdf::PrefixMap& prefixes) {
    std::vector<std::vector<std::string>> cells;
    std::vector<size_t> widths;
    std::vector<std::string> head;
    for (const auto& h : t.header) head.push_back("?" + h);
    cells.push_back(head);
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (const auto& c : row) line.push_back(render_cell(c, prefixes, false));
        cells.push_back(std::move(line));
    }
    widths.resize(t.header.size(), 0);
    for (const auto& line : cells)
        for (size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], line[i].size());

    std::string out;
    for (size_t li = 0; li < cells.size(); ++li) {
        for (size_t i = 0; i < cells[li].size(); ++i) {
            out += cells[li][i];
            if (i + 1 < cells[li].size())
                out += std::string(widths[i] - cells[li][i].size() + 2, ' ');
        }
        out += '\n';
        if (li == 0) {
            size_t total = 0;
            for (size_t i = 0; i < widths.size(); ++i) total += widths[i] + (i + 1 < widths.size() ? 2 : 0);
            out += std::string(total, '-');
            out += '\n';
        }
    }
    out += std::to_string(t.rows.size()) + " row(s)\n";
    return out;
}

static std::string csv_escape(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string render_csv(const ResultTable& t, const rdf::PrefixMap& prefixes) {
    std::string out;
    for (size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(t.header[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(render_cell(row[i], prefixes, true));
        }
        out += '\n';
    }
    return out;
}

}  // namespace owa::query
