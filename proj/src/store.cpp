#include "owa/rdf/store.hpp"

#include <algorithm>

namespace owa::rdf {

TermId TermPool::intern(const Term& t) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    TermId id = static_cast<TermId>(by_id_.size());
    auto [pos, inserted] = index_.emplace(t, id);
    by_id_.push_back(&pos->first);
    return id;
}

TermId TermPool::intern(Term&& t) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    TermId id = static_cast<TermId>(by_id_.size());
    auto [pos, inserted] = index_.emplace(std::move(t), id);
    by_id_.push_back(&pos->first);
    return id;
}

std::optional<TermId> TermPool::find(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

GraphStore::GraphStore(std::shared_ptr<TermPool> pool)
    : pool_(pool ? std::move(pool) : std::make_shared<TermPool>()) {}

void GraphStore::insert(const Triple& t) {
    insert_ids(pool_->intern(t.subject), pool_->intern(t.predicate), pool_->intern(t.object));
}

void GraphStore::insert_ids(TermId s, TermId p, TermId o) {
    spo_.push_back({s, p, o});
    pos_.push_back({p, o, s});
    osp_.push_back({o, s, p});
    sealed_ = false;
}

void GraphStore::seal() {
    if (sealed_) return;
    auto pack = [](std::vector<IdTriple>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    pack(spo_);
    pack(pos_);
    pack(osp_);
    sealed_ = true;
}

void GraphStore::ensure_sealed() const {
    // Load phase is single-writer by contract, so sealing lazily from a
    // reader is safe: no reads race the sort.
    const_cast<GraphStore*>(this)->seal();
}

size_t GraphStore::size() const {
    ensure_sealed();
    return spo_.size();
}

const std::vector<IdTriple>& GraphStore::triples() const {
    ensure_sealed();
    return spo_;
}

GraphStore::IndexChoice GraphStore::index_for(const Pattern& q) const {
    if (q.s && q.o && !q.p) return IndexChoice::Osp;  // S?O -> (o,s) prefix
    if (q.s) return IndexChoice::Spo;                 // S??, SP?, SPO
    if (q.p) return IndexChoice::Pos;                 // ?P?, ?PO
    if (q.o) return IndexChoice::Osp;                 // ??O
    return IndexChoice::Scan;
}

// Contiguous range of the chosen ordering covering every candidate triple.
std::pair<const IdTriple*, const IdTriple*> GraphStore::range(const Pattern& q,
                                                              IndexChoice ix) const {
    ensure_sealed();
    const std::vector<IdTriple>* v = &spo_;
    IdTriple lo{0, 0, 0};
    IdTriple hi{kNoTerm, kNoTerm, kNoTerm};
    auto clamp = [&](int slot, std::optional<TermId> t) {
        if (t) lo[slot] = hi[slot] = *t;
    };
    switch (ix) {
        case IndexChoice::Spo:
            v = &spo_;
            clamp(0, q.s);
            clamp(1, q.p);
            clamp(2, q.o);
            break;
        case IndexChoice::Pos:
            v = &pos_;
            clamp(0, q.p);
            clamp(1, q.o);
            break;
        case IndexChoice::Osp:
            v = &osp_;
            clamp(0, q.o);
            clamp(1, q.s);
            break;
        case IndexChoice::Scan:
            v = &spo_;
            break;
    }
    auto first = std::lower_bound(v->begin(), v->end(), lo);
    auto last = std::upper_bound(first, v->end(), hi);
    return {v->data() + (first - v->begin()), v->data() + (last - v->begin())};
}

static IdTriple to_spo(const IdTriple& stored, GraphStore::IndexChoice ix) {
    switch (ix) {
        case GraphStore::IndexChoice::Pos: return {stored[2], stored[0], stored[1]};
        case GraphStore::IndexChoice::Osp: return {stored[1], stored[2], stored[0]};
        default: return stored;
    }
}

void GraphStore::for_each(const Pattern& q,
                          const std::function<void(const IdTriple&)>& fn) const {
    IndexChoice ix = index_for(q);
    auto [first, last] = range(q, ix);
    for (const IdTriple* it = first; it != last; ++it) {
        IdTriple t = to_spo(*it, ix);
        if (q.s && t[0] != *q.s) continue;
        if (q.p && t[1] != *q.p) continue;
        if (q.o && t[2] != *q.o) continue;
        fn(t);
    }
}

std::vector<IdTriple> GraphStore::match(const Pattern& q) const {
    std::vector<IdTriple> out;
    for_each(q, [&](const IdTriple& t) { out.push_back(t); });
    return out;
}

size_t GraphStore::count(const Pattern& q) const {
    IndexChoice ix = index_for(q);
    auto [first, last] = range(q, ix);
    // Every range is an exact prefix match for its ordering, so the span is
    // already the answer.
    return static_cast<size_t>(last - first);
}

bool GraphStore::contains(TermId s, TermId p, TermId o) const {
    ensure_sealed();
    IdTriple t{s, p, o};
    return std::binary_search(spo_.begin(), spo_.end(), t);
}

}  // namespace owa::rdf
