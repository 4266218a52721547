#pragma once

#include <stdexcept>
#include <string>

namespace owa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    explicit IoError(const std::string& path, const std::string& what)
        : Error("io error: " + path + ": " + what), path(path) {}
    std::string path;
};

struct MalformedCdx : Error {
    MalformedCdx(const std::string& field, const std::string& reason)
        : Error("malformed cdx: " + field + ": " + reason), field(field), reason(reason) {}
    std::string field;
    std::string reason;
};

struct MalformedWarc : Error {
    explicit MalformedWarc(const std::string& reason)
        : Error("malformed warc: " + reason), reason(reason) {}
    std::string reason;
};

struct ParseError : Error {
    ParseError(size_t line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason),
          line(line),
          reason(reason) {}
    size_t line;
    std::string reason;
};

struct QuerySyntaxError : Error {
    QuerySyntaxError(size_t position, const std::string& expected)
        : Error("query syntax error at offset " + std::to_string(position) + ": " + expected),
          position(position),
          expected(expected) {}
    size_t position;
    std::string expected;
};

struct UnregisteredService : Error {
    explicit UnregisteredService(const std::string& iri)
        : Error("unregistered SERVICE endpoint: " + iri), iri(iri) {}
    std::string iri;
};

struct UnserializableTerm : Error {
    explicit UnserializableTerm(const std::string& what) : Error("unserializable term: " + what) {}
};

struct UnknownCandidate : Error {
    UnknownCandidate(const std::string& surface, const std::string& uri)
        : Error("candidate not in gazetteer: (" + surface + ", " + uri + ")") {}
};

struct UnknownDocument : Error {
    explicit UnknownDocument(const std::string& node)
        : Error("document not in layer: " + node), node(node) {}
    std::string node;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

}  // namespace owa
