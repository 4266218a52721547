#include "owa/util/url.hpp"

#include <vector>

#include "owa/util/strings.hpp"

namespace owa {

std::optional<Url> Url::parse(std::string_view s) {
    Url u;
    // scheme
    size_t colon = s.find(':');
    if (colon != std::string_view::npos && colon > 0) {
        bool ok = (s[0] >= 'a' && s[0] <= 'z') || (s[0] >= 'A' && s[0] <= 'Z');
        for (size_t i = 1; ok && i < colon; ++i) {
            char c = s[i];
            ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                 c == '+' || c == '-' || c == '.';
        }
        if (ok) {
            u.scheme = str::lowercase(s.substr(0, colon));
            s = s.substr(colon + 1);
        }
    }
    if (str::starts_with(s, "//")) {
        u.has_authority = true;
        s = s.substr(2);
        size_t end = s.find_first_of("/?#");
        u.authority = std::string(s.substr(0, end == std::string_view::npos ? s.size() : end));
        s = end == std::string_view::npos ? std::string_view{} : s.substr(end);
    }
    size_t qpos = s.find('?');
    size_t fpos = s.find('#');
    if (fpos != std::string_view::npos && qpos != std::string_view::npos && fpos < qpos)
        qpos = std::string_view::npos;  // '?' inside fragment
    size_t path_end = std::min(qpos == std::string_view::npos ? s.size() : qpos,
                               fpos == std::string_view::npos ? s.size() : fpos);
    u.path = std::string(s.substr(0, path_end));
    if (qpos != std::string_view::npos) {
        u.has_query = true;
        size_t qend = (fpos != std::string_view::npos) ? fpos : s.size();
        u.query = std::string(s.substr(qpos + 1, qend - qpos - 1));
    }
    if (fpos != std::string_view::npos) {
        u.has_fragment = true;
        u.fragment = std::string(s.substr(fpos + 1));
    }
    return u;
}

std::string Url::to_string() const {
    std::string out;
    if (!scheme.empty()) {
        out += scheme;
        out += ':';
    }
    if (has_authority) {
        out += "//";
        out += authority;
    }
    out += path;
    if (has_query) {
        out += '?';
        out += query;
    }
    if (has_fragment) {
        out += '#';
        out += fragment;
    }
    return out;
}

// RFC 3986 section 5.2.4.
static std::string remove_dot_segments(std::string_view path) {
    std::string in(path);
    std::string out;
    while (!in.empty()) {
        if (str::starts_with(in, "../")) {
            in.erase(0, 3);
        } else if (str::starts_with(in, "./")) {
            in.erase(0, 2);
        } else if (str::starts_with(in, "/./")) {
            in.erase(0, 2);  // "/./x" -> "/x"
        } else if (in == "/.") {
            in = "/";
        } else if (str::starts_with(in, "/../")) {
            in.erase(0, 3);
            size_t slash = out.rfind('/');
            out.erase(slash == std::string::npos ? 0 : slash);
        } else if (in == "/..") {
            in = "/";
            size_t slash = out.rfind('/');
            out.erase(slash == std::string::npos ? 0 : slash);
        } else if (in == "." || in == "..") {
            in.clear();
        } else {
            size_t start = in[0] == '/' ? 1 : 0;
            size_t slash = in.find('/', start);
            size_t seg_end = slash == std::string::npos ? in.size() : slash;
            out += in.substr(0, seg_end);
            in.erase(0, seg_end);
        }
    }
    return out;
}

static std::string merge_paths(const Url& base, const std::string& ref_path) {
    if (base.has_authority && base.path.empty()) return "/" + ref_path;
    size_t slash = base.path.rfind('/');
    if (slash == std::string::npos) return ref_path;
    return base.path.substr(0, slash + 1) + ref_path;
}

std::optional<std::string> resolve_url(std::string_view base_str, std::string_view reference) {
    auto base = Url::parse(base_str);
    auto ref = Url::parse(reference);
    if (!base || !ref || base->scheme.empty()) return std::nullopt;

    Url target;
    if (!ref->scheme.empty()) {
        target = *ref;
        target.path = remove_dot_segments(target.path);
    } else {
        target.scheme = base->scheme;
        if (ref->has_authority) {
            target.has_authority = true;
            target.authority = ref->authority;
            target.path = remove_dot_segments(ref->path);
            target.has_query = ref->has_query;
            target.query = ref->query;
        } else {
            target.has_authority = base->has_authority;
            target.authority = base->authority;
            if (ref->path.empty()) {
                target.path = base->path;
                target.has_query = ref->has_query ? true : base->has_query;
                target.query = ref->has_query ? ref->query : base->query;
            } else {
                target.path = ref->path[0] == '/' ? remove_dot_segments(ref->path)
                                                  : remove_dot_segments(merge_paths(*base, ref->path));
                target.has_query = ref->has_query;
                target.query = ref->query;
            }
        }
        target.has_fragment = ref->has_fragment;
        target.fragment = ref->fragment;
    }
    return target.to_string();
}

std::string surt_from_url(std::string_view url) {
    auto parsed = Url::parse(url);
    std::string host, rest;
    if (parsed && parsed->has_authority) {
        host = str::lowercase(parsed->authority);
        if (str::starts_with(host, "www.")) host = host.substr(4);
        Url tail = *parsed;
        tail.scheme.clear();
        tail.has_authority = false;
        tail.authority.clear();
        tail.has_fragment = false;
        tail.fragment.clear();
        rest = str::lowercase(tail.to_string());
    } else {
        rest = str::lowercase(url);
    }
    if (rest.empty()) rest = "/";
    auto labels = str::split(host, '.');
    std::string out;
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
        if (!out.empty()) out += ',';
        out.append(it->data(), it->size());
    }
    out += ')';
    out += rest;
    return out;
}

}  // namespace owa
