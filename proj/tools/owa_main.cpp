#include <CLI11.hpp>
#include <httplib.h>

#include <iostream>

#include "owa/analytics/analytics.hpp"
#include "owa/errors.hpp"
#include "owa/eval/harness.hpp"
#include "owa/extract/corpus.hpp"
#include "owa/layer/builder.hpp"
#include "owa/pipeline/pipeline.hpp"
#include "owa/query/eval.hpp"
#include "owa/rdf/vocab.hpp"
#include "owa/service/service.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"

namespace {

// exit codes: 0 ok, 1 internal error, 2 config/usage, 3 query syntax,
// 4 unregistered SERVICE, 5 bind failure
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitQuerySyntax = 3;
constexpr int kExitUnregistered = 4;
constexpr int kExitBind = 5;

struct CommonMountArgs {
    std::vector<std::string> layers;
    std::vector<std::string> kb_mounts;
};

void add_mount_options(CLI::App* cmd, CommonMountArgs& args) {
    cmd->add_option("-l,--layer", args.layers, "layer N3 file (repeatable)")->required();
    cmd->add_option("-k,--kb", args.kb_mounts, "KB mount as service-iri=path (repeatable)");
}

int cmd_build(const std::string& config_path) {
    auto config = owa::pipeline::BuildConfig::parse_file(config_path);
    auto stats = owa::pipeline::run_build(config);
    std::cout << stats.manifest_text();
    std::cout << "layer: " << config.output_path << "\n";
    return kExitOk;
}

int cmd_query(const CommonMountArgs& mounts_args, const std::string& query_path,
              const std::string& format, bool explain_plan) {
    auto mounts = owa::service::load_mounts(mounts_args.layers, mounts_args.kb_mounts);
    auto ast = owa::query::parse_query(owa::read_file(query_path));
    if (explain_plan) {
        std::cout << owa::query::explain(ast, *mounts.layer);
        return kExitOk;
    }
    auto result = owa::query::evaluate(ast, *mounts.layer, mounts.registry);
    if (format == "csv")
        std::cout << owa::query::render_csv(result, ast.prefixes);
    else
        std::cout << owa::query::render_table(result, ast.prefixes);
    return kExitOk;
}

int cmd_serve(const CommonMountArgs& mounts_args, const std::string& bind) {
    size_t colon = bind.rfind(':');
    if (colon == std::string::npos) throw owa::ConfigError("bind address must be host:port");
    std::string host = bind.substr(0, colon);
    long long port;
    if (!owa::str::parse_i64(bind.substr(colon + 1), port) || port < 0 || port > 65535)
        throw owa::ConfigError("bad port in bind address");

    auto mounts = std::make_shared<owa::service::Mounts>(
        owa::service::load_mounts(mounts_args.layers, mounts_args.kb_mounts));
    httplib::Server server;
    owa::service::setup_sparql_endpoint(server, mounts);
    if (!server.bind_to_port(host, static_cast<int>(port))) {
        std::cerr << "failed to bind " << bind << "\n";
        return kExitBind;
    }
    std::cout << "serving /sparql on " << host << ":" << port << "\n" << std::flush;
    if (!server.listen_after_bind()) return kExitBind;
    return kExitOk;
}

int cmd_eval(const CommonMountArgs& mounts_args, const std::string& needs_path,
             const std::string& judgments_path, const std::string& corpus_path,
             const std::string& corpus_kind, int runs, const std::string& out_dir) {
    auto mounts = owa::service::load_mounts(mounts_args.layers, mounts_args.kb_mounts);
    auto needs = owa::eval::load_needs(needs_path);
    auto judgments = owa::eval::load_judgments(judgments_path);

    std::vector<owa::eval::LayerDoc> corpus;
    if (corpus_kind == "news") {
        for (const auto& a : owa::extract::parse_news_corpus(corpus_path).records)
            corpus.push_back({a.url, a.publication_date, a.title, a.body});
    } else if (corpus_kind == "tweets") {
        for (const auto& t : owa::extract::parse_tweet_stream(corpus_path).records)
            corpus.push_back({owa::layer::tweet_iri(t), t.created_at, "", t.text});
    } else {
        throw owa::ConfigError("corpus kind must be news|tweets");
    }

    auto metrics = owa::eval::run_suite(needs, judgments, *mounts.layer, mounts.registry, corpus);
    auto timings = owa::eval::time_queries(needs, *mounts.layer, mounts.registry, runs);

    std::cout << owa::eval::metrics_text(metrics) << "\n";
    std::cout << owa::eval::timing_text(timings);
    if (!out_dir.empty()) {
        owa::write_file(out_dir + "/metrics.csv", owa::eval::metrics_csv(metrics));
        owa::write_file(out_dir + "/timings.csv", owa::eval::timing_csv(timings));
        std::cout << "wrote " << out_dir << "/metrics.csv and timings.csv\n";
    }
    return kExitOk;
}

void print_ranked(const std::vector<owa::analytics::RankedEntity>& rows,
                  const std::string& format, const char* head) {
    if (format == "csv") {
        std::cout << head << ",count\n";
        for (const auto& r : rows) std::cout << r.iri << "," << r.count << "\n";
    } else {
        for (const auto& r : rows) std::cout << r.count << "  " << r.iri << "\n";
        std::cout << rows.size() << " row(s)\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic layers for web archives: build, query, serve, evaluate"};
    app.require_subcommand(1);

    // build
    std::string config_path;
    auto* build = app.add_subcommand("build", "construct a layer from a config file");
    build->add_option("-c,--config", config_path, "build config file")->required();

    // query
    CommonMountArgs query_mounts;
    std::string query_path, query_format = "table";
    bool explain_plan = false;
    auto* query = app.add_subcommand("query", "evaluate a SPARQL file against layers");
    add_mount_options(query, query_mounts);
    query->add_option("-q,--query", query_path, "SPARQL query file")->required();
    query->add_option("--format", query_format, "csv|table (default table)");
    query->add_flag("--explain", explain_plan, "print the plan instead of evaluating");

    // serve
    CommonMountArgs serve_mounts;
    std::string bind = "127.0.0.1:8089";
    auto* serve = app.add_subcommand("serve", "expose /sparql over HTTP");
    add_mount_options(serve, serve_mounts);
    serve->add_option("-b,--bind", bind, "host:port (default 127.0.0.1:8089)");

    // eval
    CommonMountArgs eval_mounts;
    std::string needs_path, judgments_path, corpus_path, corpus_kind = "news", out_dir;
    int runs = 10;
    auto* eval_cmd = app.add_subcommand("eval", "run the information-need suite and time it");
    add_mount_options(eval_cmd, eval_mounts);
    eval_cmd->add_option("--needs", needs_path, "needs file")->required();
    eval_cmd->add_option("--judgments", judgments_path, "judgments file")->required();
    eval_cmd->add_option("--corpus", corpus_path, "document corpus for the keyword baseline")
        ->required();
    eval_cmd->add_option("--corpus-kind", corpus_kind, "news|tweets (default news)");
    eval_cmd->add_option("--runs", runs, "timing runs per query (default 10)");
    eval_cmd->add_option("--out-dir", out_dir, "write metrics.csv / timings.csv here");

    // analytics
    CommonMountArgs ana_mounts;
    std::string ana_entity, ana_type, ana_doc, ana_from = "0001-01-01", ana_to = "9999-12-31";
    std::string ana_format = "table";
    int ana_year = 0;
    size_t ana_top = 5;
    bool show_sparql = false;
    auto* ana = app.add_subcommand("analytics", "canned analyses over a layer");
    ana->require_subcommand(1);
    auto* pop = ana->add_subcommand("popularity", "monthly mention share of an entity");
    auto* cooc = ana->add_subcommand("cooccur", "top entities co-occurring with a seed");
    auto* sim = ana->add_subcommand("similar", "documents sharing the most entities");
    auto* top = ana->add_subcommand("top", "most mentioned entities of a KB type");
    for (auto* sub : {pop, cooc, sim, top}) {
        add_mount_options(sub, ana_mounts);
        sub->add_option("--format", ana_format, "csv|table (default table)");
        sub->add_flag("--show-sparql", show_sparql, "print the equivalent SPARQL and exit");
    }
    pop->add_option("--entity", ana_entity, "entity IRI")->required();
    pop->add_option("--year", ana_year, "year")->required();
    cooc->add_option("--entity", ana_entity, "seed entity IRI")->required();
    cooc->add_option("--type", ana_type, "KB type IRI for candidates")->required();
    cooc->add_option("--from", ana_from, "start date YYYY-MM-DD");
    cooc->add_option("--to", ana_to, "end date YYYY-MM-DD");
    cooc->add_option("--top", ana_top, "result count (default 5)");
    sim->add_option("--doc", ana_doc, "document node (IRI or _:label)")->required();
    sim->add_option("--top", ana_top, "result count (default 5)");
    top->add_option("--type", ana_type, "KB type IRI")->required();
    top->add_option("--from", ana_from, "start date YYYY-MM-DD");
    top->add_option("--to", ana_to, "end date YYYY-MM-DD");
    top->add_option("--top", ana_top, "result count (default 5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (build->parsed()) return cmd_build(config_path);
        if (query->parsed()) return cmd_query(query_mounts, query_path, query_format, explain_plan);
        if (serve->parsed()) return cmd_serve(serve_mounts, bind);
        if (eval_cmd->parsed())
            return cmd_eval(eval_mounts, needs_path, judgments_path, corpus_path, corpus_kind,
                            runs, out_dir);

        // analytics
        auto from = owa::parse_xsd_date(ana_from);
        auto to = owa::parse_xsd_date(ana_to);
        if (!from || !to) throw owa::ConfigError("--from/--to must be YYYY-MM-DD");
        auto mounts = owa::service::load_mounts(ana_mounts.layers, ana_mounts.kb_mounts);

        if (pop->parsed()) {
            if (show_sparql) {
                std::cout << owa::analytics::sparql_for_popularity_all(ana_year) << "\n\n"
                          << owa::analytics::sparql_for_popularity_entity(ana_entity, ana_year)
                          << "\n";
                return kExitOk;
            }
            auto series = owa::analytics::popularity_series(*mounts.layer, ana_entity, ana_year);
            if (ana_format == "csv") {
                std::cout << "month,popularity\n";
                for (const auto& mv : series)
                    std::cout << mv.month << "," << owa::str::format_double(mv.value) << "\n";
            } else {
                for (const auto& mv : series)
                    std::cout << ana_year << "-" << (mv.month < 10 ? "0" : "") << mv.month << "  "
                              << owa::str::format_double(mv.value) << "\n";
                std::cout << series.size() << " row(s)\n";
            }
        } else if (cooc->parsed()) {
            if (show_sparql) {
                std::cout << owa::analytics::sparql_for_cooccurring(ana_entity, ana_type, *from,
                                                                    *to, ana_top)
                          << "\n";
                return kExitOk;
            }
            auto rows = owa::analytics::top_cooccurring(*mounts.layer, mounts.registry, ana_entity,
                                                        ana_type, *from, *to, ana_top);
            print_ranked(rows, ana_format, "entity");
        } else if (sim->parsed()) {
            if (show_sparql) {
                std::cout << owa::analytics::sparql_for_similar(ana_doc, ana_top) << "\n";
                return kExitOk;
            }
            auto rows = owa::analytics::similar_documents(*mounts.layer, ana_doc, ana_top);
            if (ana_format == "csv") {
                std::cout << "document,common_entities\n";
                for (const auto& r : rows) std::cout << r.node << "," << r.common << "\n";
            } else {
                for (const auto& r : rows) std::cout << r.common << "  " << r.node << "\n";
                std::cout << rows.size() << " row(s)\n";
            }
        } else if (top->parsed()) {
            if (show_sparql) {
                std::cout << owa::analytics::sparql_for_top_entities(ana_type, *from, *to, ana_top,
                                                                     false)
                          << "\n";
                return kExitOk;
            }
            auto rows = owa::analytics::top_entities(*mounts.layer, mounts.registry, ana_type,
                                                     *from, *to, ana_top);
            print_ranked(rows, ana_format, "entity");
        }
        return kExitOk;
    } catch (const owa::QuerySyntaxError& e) {
        std::cerr << e.what() << "\n";
        return kExitQuerySyntax;
    } catch (const owa::UnregisteredService& e) {
        std::cerr << e.what() << "\n";
        return kExitUnregistered;
    } catch (const owa::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const owa::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
