#include <httplib.h>

#include "owa/errors.hpp"
#include "owa/rdf/n3.hpp"
#include "owa/rdf/vocab.hpp"
#include "owa/service/service.hpp"
#include "owa/util/fs.hpp"

namespace owa::service {

Mounts load_mounts(const std::vector<std::string>& layer_paths,
                   const std::vector<std::string>& kb_mounts) {
    Mounts m;
    m.pool = std::make_shared<rdf::TermPool>();
    m.layer = std::make_shared<rdf::GraphStore>(m.pool);
    for (const auto& path : layer_paths)
        rdf::parse_n3_into(*m.layer, read_file_maybe_gzip(path));
    m.layer->seal();

    for (const auto& mount : kb_mounts) {
        size_t eq = mount.rfind('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == mount.size())
            throw ConfigError("kb mount must be iri=path: " + mount);
        std::string iri = mount.substr(0, eq);
        std::string path = mount.substr(eq + 1);
        auto store = std::make_shared<rdf::GraphStore>(m.pool);
        rdf::parse_n3_into(*store, read_file_maybe_gzip(path));
        store->seal();
        m.registry.register_service(iri, store);
    }
    return m;
}

void setup_sparql_endpoint(httplib::Server& server, std::shared_ptr<const Mounts> mounts) {
    auto answer = [mounts](const std::string& query_text, const std::string& format,
                           httplib::Response& res) {
        try {
            auto ast = query::parse_query(query_text);
            auto result = query::evaluate(ast, *mounts->layer, mounts->registry);
            if (format == "table") {
                res.set_content(query::render_table(result, ast.prefixes), "text/plain");
            } else {
                res.set_content(query::render_csv(result, ast.prefixes), "text/csv");
            }
        } catch (const QuerySyntaxError& e) {
            res.status = 400;
            res.set_content(std::string("query syntax error: ") + e.what(), "text/plain");
        } catch (const UnregisteredService& e) {
            res.status = 400;
            res.set_content(std::string("unregistered service: ") + e.iri, "text/plain");
        } catch (const Error& e) {
            res.status = 400;
            res.set_content(std::string("error: ") + e.what(), "text/plain");
        }
    };

    server.Get("/sparql", [answer](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("query")) {
            res.status = 400;
            res.set_content("missing query parameter", "text/plain");
            return;
        }
        answer(req.get_param_value("query"), req.get_param_value("format"), res);
    });
    server.Post("/sparql", [answer](const httplib::Request& req, httplib::Response& res) {
        std::string format = req.has_param("format") ? req.get_param_value("format") : "";
        if (req.body.empty()) {
            res.status = 400;
            res.set_content("empty query body", "text/plain");
            return;
        }
        answer(req.body, format, res);
    });
}

}  // namespace owa::service
