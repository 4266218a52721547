#pragma once

#include <memory>
#include <string>
#include <vector>

#include "owa/query/eval.hpp"
#include "owa/rdf/store.hpp"

namespace httplib {
class Server;
}

namespace owa::service {

// Layers and KB mounts share one term pool so SERVICE joins run on ids.
struct Mounts {
    std::shared_ptr<rdf::TermPool> pool;
    std::shared_ptr<rdf::GraphStore> layer;
    query::ServiceRegistry registry;
};

// layer_paths: N3 files (.gz ok), unioned into one store. kb_mounts:
// "service-iri=path" pairs split at the last '='.
Mounts load_mounts(const std::vector<std::string>& layer_paths,
                   const std::vector<std::string>& kb_mounts);

// GET /sparql?query=...  and  POST /sparql (body = query); `format`
// parameter selects csv (default) or table. Parse and evaluation errors
// come back as 400 with a diagnostic body.
void setup_sparql_endpoint(httplib::Server& server, std::shared_ptr<const Mounts> mounts);

}  // namespace owa::service
