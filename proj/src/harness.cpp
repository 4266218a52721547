#include "owa/eval/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <unordered_map>

#include "owa/errors.hpp"
#include "owa/link/linker.hpp"
#include "owa/util/fs.hpp"
#include "owa/util/strings.hpp"

namespace owa::eval {

namespace {

std::map<std::string, std::string, std::less<>> line_fields(std::string_view line) {
    std::map<std::string, std::string, std::less<>> out;
    for (std::string_view part : str::split(line, '\t')) {
        size_t eq = part.find('=');
        if (eq == std::string_view::npos || eq == 0) continue;
        out[std::string(part.substr(0, eq))] = str::tsv_unescape(part.substr(eq + 1));
    }
    return out;
}

void for_each_line(std::string_view text, const std::function<void(std::string_view)>& fn) {
    size_t start = 0;
    while (start < text.size()) {
        size_t nl = text.find('\n', start);
        size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line(text.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        start = end + 1;
        if (!line.empty() && line[0] != '#') fn(line);
    }
}

}  // namespace

std::vector<InfoNeed> load_needs(const std::string& path) {
    std::vector<InfoNeed> needs;
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::string text = read_file(path);
    for_each_line(text, [&](std::string_view line) {
        auto f = line_fields(line);
        auto get = [&](const char* key) -> const std::string& {
            auto it = f.find(key);
            if (it == f.end()) throw ConfigError("needs file: missing field '" + std::string(key) +
                                                 "' in line: " + std::string(line.substr(0, 60)));
            return it->second;
        };
        InfoNeed need;
        long long id;
        if (!str::parse_i64(get("id"), id)) throw ConfigError("needs file: bad id");
        need.id = static_cast<int>(id);
        need.description = get("description");
        need.keywords = get("keywords");
        auto from = parse_xsd_date(get("date_from")), to = parse_xsd_date(get("date_to"));
        if (!from || !to || from->epoch_seconds() > to->epoch_seconds())
            throw ConfigError("needs file: invalid date range for need " + std::to_string(id));
        need.date_from = *from;
        need.date_to = *to;
        std::string qpath = get("sparql");
        std::filesystem::path resolved = std::filesystem::path(qpath).is_absolute()
                                             ? std::filesystem::path(qpath)
                                             : base / qpath;
        need.sparql = read_file(resolved.string());
        needs.push_back(std::move(need));
    });
    return needs;
}

JudgmentSet load_judgments(const std::string& path) {
    JudgmentSet out;
    std::string text = read_file(path);
    for_each_line(text, [&](std::string_view line) {
        auto cols = str::split(line, '\t');
        if (cols.size() != 3) throw ConfigError("judgments: expected 3 columns");
        long long id;
        if (!str::parse_i64(cols[0], id)) throw ConfigError("judgments: bad need id");
        std::string label(str::trim(cols[2]));
        if (label != "relevant" && label != "irrelevant")
            throw ConfigError("judgments: label must be relevant|irrelevant");
        out[{static_cast<int>(id), std::string(cols[1])}] = label == "relevant";
    });
    return out;
}

std::vector<std::string> keyword_search(const std::vector<LayerDoc>& docs,
                                        const std::string& keywords, const CivilTime& from,
                                        const CivilTime& to) {
    std::vector<std::string> terms;
    for (const auto& t : link::tokenize(keywords)) terms.push_back(t.norm);

    struct Scored {
        size_t score;
        const std::string* doc_id;
    };
    std::vector<Scored> scored;
    for (const LayerDoc& doc : docs) {
        int64_t when = doc.date.epoch_seconds();
        if (when < from.epoch_seconds() || when > to.epoch_seconds()) continue;
        std::unordered_map<std::string, size_t> tf;
        for (const auto& tok : link::tokenize(doc.title)) ++tf[tok.norm];
        for (const auto& tok : link::tokenize(doc.text)) ++tf[tok.norm];
        size_t score = 0;
        for (const auto& term : terms) {
            auto it = tf.find(term);
            if (it != tf.end()) score += it->second;
        }
        if (score > 0) scored.push_back({score, &doc.doc_id});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return *a.doc_id < *b.doc_id;
    });
    std::vector<std::string> out;
    out.reserve(scored.size());
    for (const auto& s : scored) out.push_back(*s.doc_id);
    return out;
}

namespace {

// distinct bindings of the first projected variable, as plain text
std::set<std::string> sparql_doc_set(const query::ResultTable& result) {
    std::set<std::string> out;
    for (const auto& row : result.rows) {
        if (row.empty() || !row[0]) continue;
        const rdf::Term& t = *row[0];
        out.insert(t.is_blank() ? "_:" + t.lexical : t.lexical);
    }
    return out;
}

}  // namespace

std::vector<NeedMetrics> run_suite(const std::vector<InfoNeed>& needs,
                                   const JudgmentSet& judgments, const rdf::GraphStore& layer,
                                   const query::ServiceRegistry& registry,
                                   const std::vector<LayerDoc>& corpus) {
    std::vector<NeedMetrics> out;
    for (const InfoNeed& need : needs) {
        NeedMetrics m;
        m.need_id = need.id;
        query::Query ast;
        try {
            ast = query::parse_query(need.sparql);
        } catch (const QuerySyntaxError& e) {
            throw QuerySyntaxError(e.position,
                                   "need " + std::to_string(need.id) + ": " + e.expected);
        }
        auto result = query::evaluate(ast, layer, registry);
        std::set<std::string> hits = sparql_doc_set(result);
        m.sparql_hits = hits.size();

        auto relevant = [&](const std::string& doc) {
            auto it = judgments.find({need.id, doc});
            return it != judgments.end() && it->second;
        };
        std::set<std::string> sparql_relevant;
        for (const auto& doc : hits)
            if (relevant(doc)) sparql_relevant.insert(doc);
        m.sparql_relevant = sparql_relevant.size();

        auto baseline = keyword_search(corpus, need.keywords, need.date_from, need.date_to);
        m.baseline_hits = baseline.size();
        for (const auto& doc : baseline) {
            if (!relevant(doc)) continue;
            if (sparql_relevant.count(doc))
                ++m.baseline_relevant_in_sparql;
            else
                ++m.baseline_relevant_not_in_sparql;
        }
        out.push_back(m);
    }
    return out;
}

TimingTable time_queries(const std::vector<InfoNeed>& needs, const rdf::GraphStore& layer,
                         const query::ServiceRegistry& registry, int runs) {
    using Clock = std::chrono::steady_clock;
    TimingTable table;
    double total = 0;
    for (const InfoNeed& need : needs) {
        NeedTiming row;
        row.need_id = need.id;
        query::Query ast = query::parse_query(need.sparql);

        auto timed = [&](std::string* fingerprint) {
            auto begin = Clock::now();
            auto result = query::evaluate(ast, layer, registry);
            auto end = Clock::now();
            if (fingerprint) {
                fingerprint->clear();
                for (const auto& r : result.rows) {
                    for (const auto& c : r) {
                        if (c) *fingerprint += c->lexical;
                        fingerprint->push_back('\x1e');
                    }
                    fingerprint->push_back('\n');
                }
            }
            return std::chrono::duration<double, std::milli>(end - begin).count();
        };

        std::string first_rows;
        row.warmup_ms = timed(&first_rows);
        double sum = 0;
        for (int r = 0; r < runs; ++r) {
            std::string rows;
            double ms = timed(&rows);
            row.runs_ms.push_back(ms);
            sum += ms;
            if (rows != first_rows) row.deterministic = false;
        }
        row.mean_ms = runs > 0 ? sum / runs : 0;
        total += row.mean_ms;
        table.needs.push_back(std::move(row));
    }
    table.suite_mean_ms = needs.empty() ? 0 : total / static_cast<double>(needs.size());
    return table;
}

// ---------------------------------------------------------------- rendering --

std::string metrics_csv(const std::vector<NeedMetrics>& rows) {
    std::string out =
        "need_id,sparql_hits,sparql_relevant,baseline_hits,"
        "baseline_relevant_in_sparql,baseline_relevant_not_in_sparql\n";
    for (const auto& m : rows) {
        out += std::to_string(m.need_id) + "," + std::to_string(m.sparql_hits) + "," +
               std::to_string(m.sparql_relevant) + "," + std::to_string(m.baseline_hits) + "," +
               std::to_string(m.baseline_relevant_in_sparql) + "," +
               std::to_string(m.baseline_relevant_not_in_sparql) + "\n";
    }
    return out;
}

std::string metrics_text(const std::vector<NeedMetrics>& rows) {
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%-8s %-12s %-16s %-14s %-22s %-22s\n", "need", "sparql_hits",
                  "sparql_relevant", "baseline_hits", "baseline_rel_in_sparql",
                  "baseline_rel_not_in_sparql");
    out += buf;
    out += std::string(100, '-') + "\n";
    for (const auto& m : rows) {
        std::snprintf(buf, sizeof(buf), "%-8d %-12zu %-16zu %-14zu %-22zu %-22zu\n", m.need_id,
                      m.sparql_hits, m.sparql_relevant, m.baseline_hits,
                      m.baseline_relevant_in_sparql, m.baseline_relevant_not_in_sparql);
        out += buf;
    }
    return out;
}

std::string timing_csv(const TimingTable& t) {
    size_t runs = t.needs.empty() ? 0 : t.needs[0].runs_ms.size();
    std::string out = "need_id,warmup_ms";
    for (size_t r = 1; r <= runs; ++r) out += ",R" + std::to_string(r) + "_ms";
    out += ",average_ms\n";
    char buf[32];
    for (const auto& row : t.needs) {
        out += std::to_string(row.need_id);
        std::snprintf(buf, sizeof(buf), ",%.3f", row.warmup_ms);
        out += buf;
        for (double ms : row.runs_ms) {
            std::snprintf(buf, sizeof(buf), ",%.3f", ms);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), ",%.3f", row.mean_ms);
        out += buf;
        out += "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.3f", t.suite_mean_ms);
    out += "suite_mean_ms," + std::string(buf) + "\n";
    return out;
}

std::string timing_text(const TimingTable& t) {
    std::string out = "query   ";
    size_t runs = t.needs.empty() ? 0 : t.needs[0].runs_ms.size();
    char buf[32];
    for (size_t r = 1; r <= runs; ++r) {
        std::snprintf(buf, sizeof(buf), "R%-8zu", r);
        out += buf;
    }
    out += "Average (ms)\n";
    out += std::string(8 + runs * 9 + 12, '-') + "\n";
    for (const auto& row : t.needs) {
        std::snprintf(buf, sizeof(buf), "%-8d", row.need_id);
        out += buf;
        for (double ms : row.runs_ms) {
            std::snprintf(buf, sizeof(buf), "%-9.1f", ms);
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), "%.1f", row.mean_ms);
        out += buf;
        out += "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.2f", t.suite_mean_ms);
    out += "Average (ms): " + std::string(buf) + "\n";
    return out;
}

}  // namespace owa::eval
