// Deterministic fixture generator: a synthetic web collection (WARC+CDX),
// news and tweet corpora, a gazetteer, a DBpedia-style KB, build configs,
// and the 20-need evaluation suite with relevance judgments. Everything is
// derived from fixed tables and index arithmetic, so repeated runs are
// byte-identical.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <vector>

#include "owa/archive/collection_writer.hpp"
#include "owa/errors.hpp"
#include "owa/extract/corpus.hpp"
#include "owa/util/civil_time.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"

namespace {

using owa::CivilTime;
using owa::write_file;

const std::string kDbr = "http://dbpedia.org/resource/";
const std::string kDbo = "http://dbpedia.org/ontology/";
const std::string kDbc = "http://dbpedia.org/category/";
const std::string kYago = "http://dbpedia.org/class/yago/";

struct Entity {
    std::string name;      // IRI local part
    std::string surface;   // gazetteer surface form
    std::string category;  // fixture category key
    std::string iri() const { return kDbr + name; }
};

// category key -> (KB constraint kind, constraint IRI)
struct Category {
    std::string key;
    std::string kind;  // "type" | "subject"
    std::string constraint;
    std::string keywords;  // free-text query for the eval suite
};

const std::vector<Category> kCategories = {
    {"politician", "type", kDbo + "Politician", "politicians"},
    {"drug", "type", kDbo + "Drug", "drugs stimulants"},
    {"journalist", "type", kYago + "Journalist110224578", "journalists"},
    {"laker", "subject", kDbc + "Los_Angeles_Lakers_players", "Los Angeles Lakers player"},
    {"nylawyer", "subject", kDbc + "New_York_lawyers", "New York lawyers Brooklyn"},
    {"tennis", "type", kDbo + "TennisPlayer", "tennis players"},
    {"cricketer", "type", kDbo + "Cricketer", "Australian cricketers"},
    {"mammal", "type", kDbo + "Mammal", "Indian mammals"},
    {"company", "type", kDbo + "Company", "companies stock exchange"},
    {"hazard", "type", kDbo + "GeologicalHazard", "geological hazard earthquake"},
};

const std::vector<Entity> kEntities = {
    {"Barack_Obama", "Barack Obama", "politician"},
    {"Hillary_Clinton", "Hillary Clinton", "politician"},
    {"John_McCain", "John McCain", "politician"},
    {"Nelson_Mandela", "Nelson Mandela", "politician"},
    {"Angela_Merkel", "Angela Merkel", "politician"},
    {"Tony_Blair", "Tony Blair", "politician"},
    {"Cocaine", "cocaine", "drug"},
    {"Heroin", "heroin", "drug"},
    {"Aspirin", "aspirin", "drug"},
    {"Nicotine", "nicotine", "drug"},
    {"Caffeine", "caffeine", "drug"},
    {"Zidovudine", "zidovudine", "drug"},
    {"Ralph_Nader", "Ralph Nader", "journalist"},
    {"Chris_Hedges", "Chris Hedges", "journalist"},
    {"Dylan_Ratigan", "Dylan Ratigan", "journalist"},
    {"Amy_Goodman", "Amy Goodman", "journalist"},
    {"Kobe_Bryant", "Kobe Bryant", "laker"},
    {"Magic_Johnson", "Magic Johnson", "laker"},
    {"Pau_Gasol", "Pau Gasol", "laker"},
    {"Rudolph_Giuliani", "Rudolph Giuliani", "nylawyer"},
    {"Alan_Dershowitz", "Alan Dershowitz", "nylawyer"},
    {"Eliot_Spitzer", "Eliot Spitzer", "nylawyer"},  // not born in Brooklyn
    {"Roger_Federer", "Roger Federer", "tennis"},
    {"Serena_Williams", "Serena Williams", "tennis"},
    {"John_Dyson_cricketer", "John Dyson", "cricketer"},  // the disambiguation trap
    {"Bengal_Tiger", "Bengal tiger", "mammal"},
    {"Indian_Elephant", "Indian elephant", "mammal"},
    {"Enron", "Enron", "company"},
    {"Apple_Inc", "Apple", "company"},
};

const Entity* entity_by_name(const std::string& name) {
    for (const auto& e : kEntities)
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<const Entity*> entities_of(const std::string& category) {
    std::vector<const Entity*> out;
    for (const auto& e : kEntities)
        if (e.category == category) out.push_back(&e);
    return out;
}

// ------------------------------------------------------------------- kb ---

std::string kb_text() {
    std::string out;
    auto triple = [&](const std::string& s, const std::string& p, const std::string& o) {
        out += "<" + s + "> <" + p + "> " + o + " .\n";
    };
    const std::string rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    const std::string dc_subject = "http://purl.org/dc/terms/subject";
    for (const auto& cat : kCategories) {
        for (const Entity* e : entities_of(cat.key)) {
            if (cat.kind == "type")
                triple(e->iri(), rdf_type, "<" + cat.constraint + ">");
            else
                triple(e->iri(), dc_subject, "<" + cat.constraint + ">");
        }
    }
    // facts behind the lawyers listing: birth places, dates, abstracts
    triple(kDbr + "Rudolph_Giuliani", kDbo + "birthPlace", "<" + kDbr + "Brooklyn>");
    triple(kDbr + "Alan_Dershowitz", kDbo + "birthPlace", "<" + kDbr + "Brooklyn>");
    triple(kDbr + "Eliot_Spitzer", kDbo + "birthPlace", "<" + kDbr + "Bronx>");
    triple(kDbr + "Rudolph_Giuliani", kDbo + "birthDate",
           "\"1944-05-28\"^^<http://www.w3.org/2001/XMLSchema#date>");
    triple(kDbr + "Alan_Dershowitz", kDbo + "birthDate",
           "\"1938-09-01\"^^<http://www.w3.org/2001/XMLSchema#date>");
    triple(kDbr + "Rudolph_Giuliani", kDbo + "abstract",
           "\"Avocat et homme politique new-yorkais\"@fr");
    triple(kDbr + "Rudolph_Giuliani", kDbo + "abstract", "\"New York lawyer and politician\"@en");
    triple(kDbr + "Alan_Dershowitz", kDbo + "abstract", "\"American lawyer and author\"@en");
    triple(kDbr + "Barack_Obama", kDbo + "birthPlace", "<" + kDbr + "Honolulu>");
    triple(kDbr + "Barack_Obama", kDbo + "birthDate",
           "\"1961-08-04\"^^<http://www.w3.org/2001/XMLSchema#date>");
    // enrichment material for the tennis pages
    triple(kDbr + "Roger_Federer", kDbo + "birthPlace", "<" + kDbr + "Basel>");
    triple(kDbr + "Roger_Federer", kDbo + "abstract", "\"Swiss tennis player\"@en");
    return out;
}

std::string gazetteer_text() {
    std::string out;
    for (const auto& e : kEntities) {
        // context keywords make the overlap score observable
        std::string keywords = e.category;
        if (e.name == "John_Dyson_cricketer") keywords = "cricket,australia";
        double prior = e.name == "John_Dyson_cricketer" ? 0.55 : 0.9;
        out += e.surface + "\t" + e.iri() + "\t" + owa::str::format_double(prior) + "\t" +
               keywords + "\n";
    }
    return out;
}

// ----------------------------------------------------------------- news ---

// filler vocabulary free of gazetteer surfaces
const char* kFiller[] = {"the",      "report",  "describes", "council",  "meeting", "during",
                         "official", "sources", "said",      "measures", "city",    "plans",
                         "budget",   "review",  "public",    "hearing",  "local",   "community",
                         "program",  "details", "announced", "today",    "weekly",  "summary"};

struct Article {
    int index;
    std::string id;
    std::string url;
    std::string title;
    CivilTime date;
    std::string body;
    std::set<std::string> truth;      // categories truly discussed
    std::set<std::string> linked;     // categories a linker will attach (incl. traps)
    std::set<std::string> keywords_hit;  // categories whose keyword text appears
};

std::string filler_sentence(int seed, int words) {
    std::string out;
    for (int w = 0; w < words; ++w) {
        if (w) out += " ";
        out += kFiller[(seed * 7 + w * 3) % 24];
    }
    return out + ".";
}

// uniform date ladder over 1987..2007: a coprime day stride covers every
// month of every year
CivilTime article_date(int i) {
    static const int64_t base = CivilTime{1987, 1, 1, 0, 0, 0, true}.epoch_seconds() / 86400;
    static const int64_t span = 7670;  // days in 1987-01-01 .. 2007-12-31
    CivilTime d = owa::civil_from_epoch_days(base + (int64_t(i) * 2753) % span);
    d.date_only = true;
    return d;
}

std::vector<Article> make_articles(int count) {
    std::vector<Article> articles;
    auto politicians = entities_of("politician");
    auto drugs = entities_of("drug");
    auto journalists = entities_of("journalist");
    auto lakers = entities_of("laker");
    auto lawyers = entities_of("nylawyer");
    auto tennis = entities_of("tennis");
    auto mammals = entities_of("mammal");
    auto companies = entities_of("company");

    for (int i = 0; i < count; ++i) {
        Article a;
        a.index = i;
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "a%05d", i);
        a.id = idbuf;
        a.url = "http://news.fixture.test/" + a.id;
        a.date = article_date(i);

        std::vector<const Entity*> mentions;
        auto take = [&](const std::vector<const Entity*>& pool, int offset) {
            return pool[(i + offset) % pool.size()];
        };
        // rotate article themes; several categories per article
        switch (i % 6) {
            case 0:
                mentions = {take(politicians, 0), take(politicians, 1), take(journalists, 0)};
                break;
            case 1:
                mentions = {take(drugs, 0), take(drugs, 1), take(politicians, 2)};
                break;
            case 2:
                mentions = {take(lakers, 0), take(politicians, 0), take(companies, 0)};
                break;
            case 3:
                mentions = {take(lawyers, 0), take(politicians, 1), take(journalists, 1)};
                break;
            case 4:
                mentions = {take(tennis, 0), take(mammals, 0), take(companies, 1)};
                break;
            default:
                mentions = {take(politicians, 3), take(drugs, 2), take(journalists, 2)};
                break;
        }
        // densify to the target triple volume
        mentions.push_back(take(politicians, 4));
        mentions.push_back(take(drugs, 3));
        mentions.push_back(take(journalists, 3));
        mentions.push_back(take(companies, 1));
        if (i % 2 == 0) {
            mentions.push_back(take(politicians, 5));
            mentions.push_back(take(mammals, 1));
        }
        if (i % 5 == 0) mentions.push_back(take(tennis, 1));
        if (i % 7 == 0) mentions.push_back(take(lakers, 1));

        std::string body;
        int sentence = 0;
        for (const Entity* e : mentions) {
            body += filler_sentence(i + sentence, 5) + " " + e->surface + " " +
                    filler_sentence(i * 3 + sentence, 6) + "\n";
            a.truth.insert(e->category);
            a.linked.insert(e->category);
            ++sentence;
        }

        // the disambiguation trap: city articles mention the deputy mayor
        // John Dyson; the gazetteer only knows the cricketer
        bool trap = i % 25 == 3 || i == 42;
        if (i == 42) a.date = CivilTime{1994, 8, 10, 0, 0, 0, true};  // inside need 9's window
        if (trap) {
            body += "the deputy mayor John Dyson outlined the city budget plan today.\n";
            a.linked.insert("cricketer");  // linker will attach the cricketer IRI
            // truth does NOT include "cricketer": a false positive
        }
        // the recall gap: hazard stories use plain words the gazetteer lacks
        bool hazard = i % 25 == 9 || i == 77;
        if (i == 77) a.date = CivilTime{1989, 7, 20, 0, 0, 0, true};  // inside need 20's window
        if (hazard) {
            body += "residents described the earthquake hazard near the fault line.\n";
            a.truth.insert("hazard");
            a.keywords_hit.insert("hazard");
            // not in `linked`: the SPARQL route cannot see these
        }
        // keyword-findable phrasing on a slice of articles, so the baseline
        // overlaps the SPARQL results somewhere
        if (i % 11 == 0) {
            body += "local journalists covered the story while politicians attended the hearing.\n";
            a.keywords_hit.insert("journalist");
            a.keywords_hit.insert("politician");
        }

        a.title = "Fixture article " + a.id;
        a.body = body;
        articles.push_back(std::move(a));
    }
    return articles;
}

std::string news_corpus_text(const std::vector<Article>& articles) {
    std::string out;
    for (const auto& a : articles) {
        owa::extract::NewsArticle rec{a.id, a.url, a.title, a.date, a.body};
        out += owa::extract::render_news_line(rec) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- tweets ---

std::string tweets_corpus_text(int count) {
    std::string out;
    auto politicians = entities_of("politician");
    auto lakers = entities_of("laker");
    for (int i = 0; i < count; ++i) {
        owa::extract::TweetRecord t;
        t.id = std::to_string(700000000 + i);
        int month = 1 + (i % 12);
        int j = i / 12;  // counter within the month
        int day = 1 + (j * 3) % 28;
        t.created_at = CivilTime{2016, month, day, (i * 3) % 24, (i * 7) % 60, 0, false};
        t.favorite_count = (i * 13) % 400;
        t.retweet_count = (i * 29) % 120;  // some clear the >50 bar
        t.screen_name = (i % 3 == 0) ? "nytimes" : (i % 3 == 1 ? "washingtonpost" : "usatoday");
        std::string text = "breaking coverage update";
        // month-dependent shifts keep every entity present in every month
        if (j % 2 == 0) text += " " + politicians[(j / 2 + month - 1) % politicians.size()]->surface;
        if (j % 3 == 1) text += " " + lakers[(j + month - 1) % lakers.size()]->surface;
        text += " follow the desk for details";
        t.text = text;
        out += owa::extract::render_tweet_line(t) + "\n";
    }
    return out;
}

// ------------------------------------------------------------- web layer ---

std::string page_html(int url_index, int capture_index) {
    auto journalists = entities_of("journalist");
    auto politicians = entities_of("politician");
    const Entity* j = journalists[url_index % journalists.size()];
    const Entity* p = politicians[url_index % politicians.size()];

    std::string body;
    body += "<html><head><title>Fixture page " + std::to_string(url_index) + "</title></head>";
    body += "<body><nav><a href=\"/\">home</a> <a href=\"/about\">about</a></nav>";
    body += "<p>" + filler_sentence(url_index, 6) + " " + j->surface + " " +
            filler_sentence(url_index + 1, 6) + " capture marker " +
            std::to_string(capture_index) + ".</p>";
    body += "<p>" + filler_sentence(url_index + 2, 5) + " " + p->surface + " " +
            filler_sentence(url_index + 3, 7) + "</p>";
    body += "<p><a href=\"http://web.fixture.test/page" +
            std::to_string((url_index + 1) % 150) + "\">next page reference link text</a></p>";
    body += "</body></html>";
    return body;
}

struct WebPlan {
    std::vector<owa::archive::CaptureSpec> captures;
    int urls = 0;
    int total = 0;
    int revisits = 0;
};

// `urls` URLs, one canonical capture each, plus (total - urls) extra
// captures distributed round-robin; the first `revisits` extras duplicate
// their URL's first capture. sameas / total is exactly revisits / total.
WebPlan make_web_plan(int urls, int total, int revisits) {
    WebPlan plan;
    plan.urls = urls;
    plan.total = total;
    plan.revisits = revisits;

    std::vector<int> captures_per_url(urls, 1);
    std::vector<std::vector<bool>> revisit_flag(urls);
    for (int j = 0; j < total - urls; ++j) {
        int u = j % urls;
        captures_per_url[u]++;
        revisit_flag[u].push_back(j < revisits);
    }
    for (int u = 0; u < urls; ++u) {
        std::string url = "http://web.fixture.test/page" + std::to_string(u);
        std::string first_body = page_html(u, 0);
        for (int k = 0; k < captures_per_url[u]; ++k) {
            owa::archive::CaptureSpec c;
            c.url = url;
            CivilTime ts{2012, 1 + (k * 3) % 12, 1 + (u % 28), (u / 28) % 24, (u * 7) % 60, 0,
                         false};
            c.timestamp = owa::format_cdx_timestamp(ts);
            bool revisit = k > 0 && revisit_flag[u][k - 1];
            if (revisit) {
                c.revisit = true;
                c.body = first_body;  // digest source; block stays empty
            } else {
                c.body = k == 0 ? first_body : page_html(u, k);
            }
            plan.captures.push_back(std::move(c));
        }
    }
    return plan;
}

// ------------------------------------------------------------- eval suite ---

struct Need {
    int id;
    std::string category;
    std::string from, to;
    std::string description;
};

std::vector<Need> make_needs() {
    // twenty date-scoped category needs over the news fixture
    return {
        {1, "nylawyer", "1989-06-01", "1989-06-30", "articles of June 1989 mentioning NY lawyers"},
        {2, "laker", "1989-07-01", "1989-08-31", "articles of summer 1989 mentioning Lakers players"},
        {3, "politician", "1992-08-01", "1992-08-31", "articles of August 1992 mentioning politicians"},
        {4, "drug", "1990-01-01", "1990-03-31", "articles of early 1990 mentioning drugs"},
        {5, "tennis", "1992-07-01", "1992-09-20", "articles of late summer 1992 mentioning tennis players"},
        {6, "politician", "1989-07-05", "1989-08-15", "articles of mid 1989 mentioning politicians"},
        {7, "company", "1990-06-01", "1990-06-19", "articles of June 1990 mentioning companies"},
        {8, "journalist", "1989-07-01", "1989-08-31", "articles of summer 1989 mentioning journalists"},
        {9, "cricketer", "1994-07-01", "1994-09-18", "articles of 1994 mentioning cricketers"},
        {10, "company", "1995-07-01", "1995-07-31", "articles of July 1995 mentioning companies"},
        {11, "mammal", "1994-07-01", "1994-08-15", "articles of summer 1994 mentioning mammals"},
        {12, "drug", "1992-07-01", "1992-09-15", "articles of late 1992 mentioning drugs"},
        {13, "journalist", "1993-07-01", "1993-09-30", "articles of autumn 1993 mentioning journalists"},
        {14, "politician", "1989-07-01", "1989-07-31", "articles of July 1989 mentioning politicians"},
        {15, "tennis", "1998-08-01", "1998-08-31", "articles of August 1998 mentioning tennis players"},
        {16, "mammal", "1989-01-01", "1989-12-31", "articles of 1989 mentioning mammals"},
        {17, "laker", "1994-07-01", "1994-09-30", "articles of autumn 1994 mentioning Lakers players"},
        {18, "drug", "1989-06-15", "1989-08-15", "articles of summer 1989 mentioning drugs"},
        {19, "journalist", "1997-07-01", "1997-08-02", "articles of summer 1997 mentioning journalists"},
        {20, "hazard", "1989-07-01", "1989-08-15", "articles of summer 1989 mentioning geological hazards"},
    };
}

std::string need_query(const Need& need) {
    const Category* cat = nullptr;
    for (const auto& c : kCategories)
        if (c.key == need.category) cat = &c;
    std::string constraint = cat->kind == "type"
                                 ? "?e a <" + cat->constraint + "> ."
                                 : "?e <http://purl.org/dc/terms/subject> <" + cat->constraint +
                                       "> .";
    return
        "PREFIX dc: <http://purl.org/dc/terms/>\n"
        "PREFIX schema: <http://schema.org/>\n"
        "PREFIX oae: <http://www.ics.forth.gr/isl/oae/core#>\n"
        "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
        "SELECT DISTINCT ?article WHERE {\n"
        "  SERVICE <http://dbpedia.org/sparql> { " + constraint + " }\n"
        "  ?article dc:date ?date FILTER(?date >= \"" + need.from + "\"^^xsd:date &&\n"
        "                                ?date <= \"" + need.to + "\"^^xsd:date) .\n"
        "  ?article schema:mentions ?m .\n"
        "  ?m oae:hasMatchedURI ?e .\n"
        "} ORDER BY ?article\n";
}

const Category* category_of(const std::string& key) {
    for (const auto& c : kCategories)
        if (c.key == key) return &c;
    return nullptr;
}

void write_eval_suite(const std::filesystem::path& dir, const std::vector<Article>& articles) {
    std::filesystem::create_directories(dir / "needs");
    std::string needs_tsv;
    std::string judgments_tsv;

    for (const Need& need : make_needs()) {
        char qname[16];
        std::snprintf(qname, sizeof(qname), "q%02d.rq", need.id);
        write_file((dir / "needs" / qname).string(), need_query(need));
        const Category* cat = category_of(need.category);
        needs_tsv += "id=" + std::to_string(need.id) +
                     "\tdescription=" + owa::str::tsv_escape(need.description) +
                     "\tkeywords=" + owa::str::tsv_escape(cat->keywords) +
                     "\tdate_from=" + need.from + "\tdate_to=" + need.to +
                     "\tsparql=needs/" + qname + "\n";

        auto from = *owa::parse_xsd_date(need.from);
        auto to = *owa::parse_xsd_date(need.to);
        // every doc the SPARQL route or the keyword route can surface gets
        // a judgment; relevance is the generator's ground truth
        for (const Article& a : articles) {
            int64_t when = a.date.epoch_seconds();
            if (when < from.epoch_seconds() || when > to.epoch_seconds()) continue;
            bool sparql_can = a.linked.count(need.category) > 0;
            bool keyword_can = a.keywords_hit.count(need.category) > 0;
            if (!sparql_can && !keyword_can) continue;
            bool relevant = a.truth.count(need.category) > 0;
            judgments_tsv += std::to_string(need.id) + "\t" + a.url + "\t" +
                             (relevant ? "relevant" : "irrelevant") + "\n";
        }
    }
    write_file((dir / "needs.tsv").string(), needs_tsv);
    write_file((dir / "judgments.tsv").string(), judgments_tsv);
}

// ------------------------------------------------------------------ main ---

std::string config_text(const std::string& kind, const std::string& inputs,
                        const std::string& out_base, double threshold) {
    std::string cfg;
    cfg += "kind = " + kind + "\n";
    cfg += inputs;
    cfg += "gazetteer = gazetteer.tsv\n";
    cfg += "threshold = " + owa::str::format_double(threshold) + "\n";
    cfg += "timeout_ms = 10000\n";
    cfg += "size_cap = 102400\n";
    cfg += "threads = 1\n";
    cfg += "output = " + out_base + ".n3\n";
    cfg += "manifest = " + out_base + ".manifest\n";
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate the deterministic fixture collections"};
    std::string out_dir;
    int articles = 2000;
    int tweets = 480;
    int urls = 150;
    int captures = 600;
    int revisits = 90;
    app.add_option("--out", out_dir, "output directory")->required();
    app.add_option("--articles", articles, "news corpus size (default 2000)");
    app.add_option("--tweets", tweets, "tweet corpus size (default 480)");
    app.add_option("--urls", urls, "web collection distinct URLs (default 150)");
    app.add_option("--captures", captures, "web collection captures (default 600)");
    app.add_option("--revisits", revisits, "duplicate captures (default 90 = 15%)");
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);

        write_file((dir / "gazetteer.tsv").string(), gazetteer_text());
        write_file((dir / "kb.n3").string(), kb_text());

        auto article_list = make_articles(articles);
        write_file((dir / "news.tsv").string(), news_corpus_text(article_list));
        write_file((dir / "news.config").string(),
                   config_text("news", "input = news.tsv\n", "news", std::log(0.2)));

        write_file((dir / "tweets.tsv").string(), tweets_corpus_text(tweets));
        write_file((dir / "tweets.config").string(),
                   config_text("tweets", "input = tweets.tsv\n", "tweets", -4.0));

        if (captures < urls) throw owa::ConfigError("captures must be >= urls");
        if (revisits > captures - urls)
            throw owa::ConfigError("revisits must fit in the extra captures");
        WebPlan plan = make_web_plan(urls, captures, revisits);
        auto coll = owa::archive::write_collection(dir.string(), "web", plan.captures);
        std::string web_inputs = "cdx = web.cdx\nwarc_dir = .\n";
        web_inputs += "version_url_base = https://wayback.fixture.test/2950\n";
        write_file((dir / "web.config").string(), config_text("warc", web_inputs, "web", -4.0));

        write_eval_suite(dir, article_list);

        std::cout << "fixtures written to " << dir.string() << "\n"
                  << "  web: " << plan.total << " captures over " << plan.urls << " urls, "
                  << plan.revisits << " revisits\n"
                  << "  news: " << article_list.size() << " articles; tweets: " << tweets << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "fixgen: " << e.what() << "\n";
        return 1;
    }
}
