#include <doctest.h>

#include <algorithm>
#include <random>

#include "owa/errors.hpp"
#include "owa/query/eval.hpp"
#include "owa/rdf/vocab.hpp"
#include "support/naive_eval.hpp"
#include "support/query_fixtures.hpp"

using namespace owa;
using namespace owa::query;
using owa::test::make_query_fixture;
using owa::test::make_random_query;
using owa::test::naive_evaluate;
using owa::test::result_fingerprint;

namespace {

const char* kPrologue =
    "PREFIX dc: <http://purl.org/dc/terms/>\n"
    "PREFIX schema: <http://schema.org/>\n"
    "PREFIX oae: <http://www.ics.forth.gr/isl/oae/core#>\n"
    "PREFIX owa: <http://l3s.de/owa/core#>\n"
    "PREFIX tw: <http://www.openlinksw.com/schemas/twitter#>\n"
    "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
    "PREFIX dbo: <http://dbpedia.org/ontology/>\n"
    "PREFIX dbr: <http://dbpedia.org/resource/>\n";

std::string with_prologue(const std::string& body) { return kPrologue + body; }

ServiceRegistry fixture_registry(const test::QueryFixture& f) {
    ServiceRegistry reg;
    reg.register_service("http://dbpedia.org/sparql", f.kb);
    return reg;
}

}  // namespace

TEST_CASE("parser captures the subset constructs") {
    SUBCASE("group-by expression alias") {
        auto q = parse_query(with_prologue(
            "SELECT ?year (COUNT(DISTINCT ?article) AS ?num) WHERE {\n"
            "  ?article dc:date ?date ;\n"
            "             schema:mentions ?entity .\n"
            "  ?entity oae:hasMatchedURI dbr:Nelson_Mandela\n"
            "} GROUP BY (year(?date) AS ?year) order by ?year"));
        REQUIRE(q.group_by.size() == 1);
        CHECK(q.group_by[0].alias == "year");
        CHECK(q.group_by[0].expr->kind == ExprKind::Call);
        REQUIRE(q.select_items.size() == 2);
        CHECK(q.select_items[1].expr->is_aggregate());
        CHECK(q.select_items[1].expr->distinct);
        REQUIRE(q.order_by.size() == 1);
    }

    SUBCASE("service with optional and lang filter") {
        auto q = parse_query(with_prologue(
            "SELECT ?article ?title ?date ?lawyer ?bdate ?abstr WHERE {\n"
            " SERVICE <http://dbpedia.org/sparql> {\n"
            "  ?lawyer dc:subject <http://dbpedia.org/category/New_York_lawyers> ;\n"
            "              dbo:birthPlace dbr:Brooklyn .\n"
            "  OPTIONAL {\n"
            "   ?lawyer dbo:birthDate ?bdate ;\n"
            "                dbo:abstract ?abstr FILTER(lang(?abstr)=\"fr\")}}\n"
            " ?article dc:date ?date FILTER(?date>=\"1989-06-01\"^^xsd:date\n"
            "                                  && ?date<=\"1989-06-30\"^^xsd:date)\n"
            " ?article schema:mentions ?entity .\n"
            " ?entity oae:hasMatchedURI  ?lawyer .\n"
            " ?article dc:title ?title\n"
            "} ORDER BY ?lawyer"));
        REQUIRE(q.where.elements.size() >= 2);
        CHECK(q.where.elements[0].kind == GroupElement::Kind::Service);
        CHECK(q.where.elements[0].service_iri == "http://dbpedia.org/sparql");
        bool has_optional = false;
        for (const auto& e : q.where.elements[0].group->elements)
            if (e.kind == GroupElement::Kind::Optional) has_optional = true;
        CHECK(has_optional);
    }

    SUBCASE("UNION is rejected with a position") {
        CHECK_THROWS_AS(parse_query("SELECT * WHERE { ?s ?p ?o } UNION { ?s ?p ?o }"),
                        QuerySyntaxError);
        CHECK_THROWS_AS(parse_query("SELECT * WHERE { { ?s ?p ?o } UNION { ?s ?p ?o } }"),
                        QuerySyntaxError);
        CHECK_THROWS_AS(parse_query("SELECT (SUM(?x) AS ?s) WHERE { ?a ?b ?x }"),
                        QuerySyntaxError);
        try {
            parse_query("SELECT * WHERE { ?s ?p ?o } UNION {}");
            FAIL("expected QuerySyntaxError");
        } catch (const QuerySyntaxError& e) {
            CHECK(e.position > 0);
        }
    }

    SUBCASE("projected non-aggregate vars must be grouped") {
        CHECK_THROWS_AS(
            parse_query("SELECT ?a ?b WHERE { ?a <http://p> ?b } GROUP BY ?a"),
            QuerySyntaxError);
    }
}

TEST_CASE("per-year counts reproduce the derived example") {
    // dbr:Barack_Obama is mentioned in 2 articles of 1990 and 1 of 1991
    auto f = make_query_fixture();
    auto q = parse_query(with_prologue(
        "SELECT ?year (COUNT(DISTINCT ?article) AS ?num) WHERE {\n"
        "  ?article a owa:ArchivedDocument ;\n"
        "           dc:date ?date ;\n"
        "           schema:mentions ?entity .\n"
        "  ?entity oae:hasMatchedURI dbr:Barack_Obama .\n"
        "  FILTER(year(?date) <= 1991)\n"
        "} GROUP BY (year(?date) AS ?year) ORDER BY ?year"));
    auto result = evaluate(q, *f.layer, fixture_registry(f));
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0][0]->lexical == "1990");
    CHECK(result.rows[0][1]->lexical == "2");
    CHECK(result.rows[1][0]->lexical == "1991");
    CHECK(result.rows[1][1]->lexical == "1");
}

TEST_CASE("co-occurrence never returns the seed entity") {
    auto f = make_query_fixture();
    auto q = parse_query(with_prologue(
        "SELECT ?politician (count(distinct ?article) as ?num) WHERE {\n"
        "  SERVICE <http://dbpedia.org/sparql> {\n"
        "     ?politician a dbo:Politician }\n"
        "  ?article dc:date ?date FILTER(?date >= \"2007-06-01\"^^xsd:date &&\n"
        "                                       ?date <= \"2007-08-30\"^^xsd:date)  .\n"
        "  ?article schema:mentions ?entity .\n"
        "  ?entity oae:hasMatchedURI dbr:Barack_Obama .\n"
        "  ?article schema:mentions ?entityPolit.\n"
        "  ?entityPolit oae:hasMatchedURI ?politician\n"
        "                           FILTER (?politician != dbr:Barack_Obama)\n"
        "} GROUP BY ?politician ORDER BY DESC(?num) LIMIT 5"));
    auto result = evaluate(q, *f.layer, fixture_registry(f));
    REQUIRE(result.rows.size() == 2);
    for (const auto& row : result.rows)
        CHECK(row[0]->lexical != "http://dbpedia.org/resource/Barack_Obama");
    // Hillary in articles 8,9; McCain in 9,10 (both co-occur twice); ties
    // break on the full-row byte order
    CHECK(result.rows[0][1]->lexical == "2");
    CHECK(result.rows[1][1]->lexical == "2");
}

TEST_CASE("monthly popularity divides subquery counts") {
    auto f = make_query_fixture();
    // month 6: 4 tweets, 1 mentioning Obama -> 0.25; month 7: 2 of 2 -> 1
    auto q = parse_query(with_prologue(
        "SELECT ?month xsd:double(?cEnt)/xsd:double(?cAll)\n"
        "WHERE {\n"
        " { SELECT (month(?date) AS ?month) (count(?tweet) AS ?cAll) WHERE {\n"
        "     ?tweet a tw:Tweet ; dc:date ?date FILTER(year(?date) = 2016)\n"
        "   } GROUP BY month(?date) }\n"
        " { SELECT (month(?date) AS ?month) (count(?tweet) AS ?cEnt) WHERE {\n"
        "     ?tweet a tw:Tweet ; dc:date ?date FILTER(year(?date) = 2016) .\n"
        "     ?tweet schema:mentions ?entity .\n"
        "     ?entity oae:hasMatchedURI dbr:Barack_Obama\n"
        "   } GROUP BY month(?date) }\n"
        "} ORDER BY ?month"));
    auto result = evaluate(q, *f.layer, fixture_registry(f));
    REQUIRE(result.rows.size() == 2);
    CHECK(result.header[1] == "expr1");  // auto-named bare expression
    CHECK(result.rows[0][0]->lexical == "6");
    CHECK(result.rows[0][1]->lexical == "0.25");
    CHECK(result.rows[1][0]->lexical == "7");
    CHECK(result.rows[1][1]->lexical == "1");
}

TEST_CASE("retweet threshold filter mixes date and dateTime") {
    auto f = make_query_fixture();
    auto q = parse_query(with_prologue(
        "SELECT DISTINCT ?text ?count ?date ?entityUri WHERE {\n"
        " SERVICE <http://dbpedia.org/sparql> {\n"
        "   ?entityUri dc:subject <http://dbpedia.org/category/Los_Angeles_Lakers_players> }\n"
        " ?t a tw:Tweet ;\n"
        "     dc:date ?date FILTER(?date>=\"2016-06-01\"^^xsd:dateTime &&\n"
        "                               ?date<=\"2016-08-31\"^^xsd:dateTime)\n"
        " ?t tw:retweetCount ?count FILTER (?count > 50) .\n"
        " ?t schema:text ?text ; schema:mentions ?entity .\n"
        " ?entity oae:hasMatchedURI ?entityUri }"));
    auto result = evaluate(q, *f.layer, fixture_registry(f));
    // Kobe tweets: #2 (2 retweets, dropped) and #3 (80 retweets)
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][0]->lexical == "tweet 3");
}

TEST_CASE("service against unregistered iri raises") {
    auto f = make_query_fixture();
    auto q = parse_query(
        "SELECT ?s WHERE { SERVICE <http://nowhere.example/sparql> { ?s ?p ?o } }");
    ServiceRegistry empty;
    CHECK_THROWS_AS(evaluate(q, *f.layer, empty), UnregisteredService);

    SUBCASE("registration is idempotent by IRI") {
        ServiceRegistry reg;
        reg.register_service("http://x/sparql", f.kb);
        reg.register_service("http://x/sparql", f.kb);
        CHECK(reg.iris().size() == 1);
    }
}

TEST_CASE("filter type errors drop the row") {
    auto f = make_query_fixture();
    // year() of an IRI is a type error -> treated as false for that row
    auto q = parse_query(with_prologue(
        "SELECT ?s WHERE { ?s a owa:ArchivedDocument FILTER(year(?s) = 1990) }"));
    auto result = evaluate(q, *f.layer, fixture_registry(f));
    CHECK(result.rows.empty());
}

TEST_CASE("explain lists patterns in plan order with index choices") {
    auto f = make_query_fixture();
    auto q = parse_query(with_prologue(
        "SELECT ?journ (COUNT(DISTINCT ?page) AS ?num) WHERE {\n"
        " ?page a owa:ArchivedDocument ;\n"
        "           dc:hasVersion ?version .\n"
        " ?version schema:mentions ?entity .\n"
        " ?entity oae:hasMatchedURI  ?journ .\n"
        "} GROUP BY ?journ ORDER BY DESC(?num)"));
    std::string plan = explain(q, *f.layer);
    CHECK(plan.find("bgp:") != std::string::npos);
    CHECK(plan.find("1. ") != std::string::npos);
    CHECK(plan.find("4. ") != std::string::npos);
    CHECK(plan.find("[index: ") != std::string::npos);
    std::string plan2 = explain(q);
    CHECK(plan2.find("bgp:") != std::string::npos);
}

TEST_CASE("engine matches the naive oracle on the fixture queries") {
    auto f = make_query_fixture();
    auto reg = fixture_registry(f);
    const char* queries[] = {
        "SELECT ?article ?uri WHERE { ?article schema:mentions ?e . ?e oae:hasMatchedURI ?uri }",
        "SELECT DISTINCT ?uri WHERE { ?d schema:mentions ?e . ?e oae:hasMatchedURI ?uri }",
        "SELECT ?d (COUNT(?e) AS ?n) WHERE { ?d schema:mentions ?e } GROUP BY ?d ORDER BY DESC(?n) ?d",
        "SELECT ?drug (count(DISTINCT ?article) as ?numOfArticles) WHERE {\n"
        "  SERVICE <http://dbpedia.org/sparql> { ?drug a dbo:Drug }\n"
        "  ?article dc:date ?date FILTER(year(?date) = \"1987\") .\n"
        "  ?article schema:mentions ?ent .\n"
        "  ?ent oae:hasMatchedURI  ?drug .\n"
        "} GROUP BY ?drug ORDER BY DESC(?numOfArticles)",
        "SELECT ?t ?bp WHERE { ?t a tw:Tweet . ?t schema:mentions ?e .\n"
        "  ?e oae:hasMatchedURI ?u OPTIONAL { SERVICE <http://dbpedia.org/sparql> {\n"
        "  ?u dbo:birthPlace ?bp } } }",
        "SELECT ?s WHERE { ?s dc:date ?d FILTER(?d >= \"2007-01-01\"^^xsd:date) } LIMIT 3",
    };
    for (const char* body : queries) {
        auto q = parse_query(with_prologue(body));
        auto engine = evaluate(q, *f.layer, reg);
        auto naive = naive_evaluate(q, *f.layer, reg);
        CHECK(result_fingerprint(engine, true) == result_fingerprint(naive, true));
    }
}

TEST_CASE("randomized queries match the oracle and ignore join order") {
    auto f = make_query_fixture();
    auto reg = fixture_registry(f);
    std::mt19937_64 rng(2024);

    for (int round = 0; round < 40; ++round) {
        Query q = make_random_query(rng, true);
        auto engine = evaluate(q, *f.layer, reg);
        auto naive = naive_evaluate(q, *f.layer, reg);
        REQUIRE_MESSAGE(result_fingerprint(engine, true) == result_fingerprint(naive, true),
                        "round " << round);

        // shuffle pattern order inside each BGP and force in-order joins
        Query shuffled = q;
        for (auto& e : shuffled.where.elements)
            if (e.kind == GroupElement::Kind::Triples)
                std::shuffle(e.triples.begin(), e.triples.end(), rng);
        EvalOptions in_order;
        in_order.keep_pattern_order = true;
        auto reordered = evaluate(shuffled, *f.layer, reg, in_order);
        CHECK(result_fingerprint(engine, true) == result_fingerprint(reordered, true));
    }
}

TEST_CASE("limit never changes the first k rows of the ordered result") {
    auto f = make_query_fixture();
    auto reg = fixture_registry(f);
    auto base = parse_query(with_prologue(
        "SELECT ?d (COUNT(?e) AS ?n) WHERE { ?d schema:mentions ?e } GROUP BY ?d "
        "ORDER BY DESC(?n) ?d"));
    auto full = evaluate(base, *f.layer, reg);
    for (uint64_t k : {1, 2, 3, 5}) {
        Query limited = base;
        limited.limit = k;
        auto cut = evaluate(limited, *f.layer, reg);
        REQUIRE(cut.rows.size() == std::min<size_t>(k, full.rows.size()));
        for (size_t i = 0; i < cut.rows.size(); ++i) {
            CHECK(result_fingerprint(cut, false)[i] == result_fingerprint(full, false)[i]);
        }
    }
}

TEST_CASE("count distinct pages counts documents, not versions") {
    // versioned layer shape: page -> hasVersion -> version -> mentions
    auto pool = std::make_shared<rdf::TermPool>();
    rdf::GraphStore layer(pool);
    using rdf::Term;
    auto page = Term::iri("http://site.org/page");
    auto journ = Term::iri("http://dbpedia.org/resource/Ralph_Nader");
    layer.insert({page, Term::iri(vocab::kRdfType), Term::iri(vocab::kArchivedDocument)});
    for (int v = 0; v < 3; ++v) {  // three versions all mentioning the same journalist
        auto version = Term::blank("v" + std::to_string(v));
        auto entity = Term::blank("e" + std::to_string(v));
        layer.insert({page, Term::iri(vocab::kDcHasVersion), version});
        layer.insert({version, Term::iri(vocab::kMentions), entity});
        layer.insert({entity, Term::iri(vocab::kOaeHasMatchedUri), journ});
    }
    rdf::GraphStore kb(pool);
    kb.insert({journ, Term::iri(vocab::kRdfType),
               Term::iri("http://dbpedia.org/class/yago/Journalist110224578")});
    ServiceRegistry reg;
    reg.register_service("http://dbpedia.org/sparql",
                         std::make_shared<rdf::GraphStore>(std::move(kb)));

    auto q = parse_query(with_prologue(
        "PREFIX yago: <http://dbpedia.org/class/yago/>\n"
        "SELECT ?journ (COUNT(DISTINCT ?page) AS ?num) WHERE {\n"
        " SERVICE <http://dbpedia.org/sparql> {\n"
        "   ?journ a yago:Journalist110224578 }\n"
        " ?page a owa:ArchivedDocument ;\n"
        "           dc:hasVersion ?version .\n"
        " ?version schema:mentions ?entity .\n"
        " ?entity oae:hasMatchedURI  ?journ .\n"
        "} GROUP BY ?journ ORDER BY DESC(?num)"));
    auto result = evaluate(q, layer, reg);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][1]->lexical == "1");  // one page despite three versions
}

TEST_CASE("results render as table and csv") {
    auto f = make_query_fixture();
    auto q = parse_query(with_prologue(
        "SELECT ?month (COUNT(?t) AS ?n) WHERE { ?t a tw:Tweet ; dc:date ?d } "
        "GROUP BY (month(?d) AS ?month) ORDER BY ?month"));
    auto result = evaluate(q, *f.layer, fixture_registry(f));
    std::string csv = render_csv(result, q.prefixes);
    CHECK(csv.substr(0, csv.find('\n')) == "month,n");
    CHECK(csv.find("6,4") != std::string::npos);
    std::string table = render_table(result, q.prefixes);
    CHECK(table.find("?month") != std::string::npos);
    CHECK(table.find("2 row(s)") != std::string::npos);
}
