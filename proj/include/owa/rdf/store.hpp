#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "owa/rdf/term.hpp"

namespace owa::rdf {

using TermId = uint32_t;
constexpr TermId kNoTerm = std::numeric_limits<TermId>::max();

// Lexical forms interned to integer ids; comparisons run on ids, rendering
// happens on demand. One pool is shared by every store a query touches so
// that join equality is id equality.
class TermPool {
  public:
    TermId intern(const Term& t);
    TermId intern(Term&& t);
    const Term& get(TermId id) const { return *by_id_[id]; }
    std::optional<TermId> find(const Term& t) const;
    size_t size() const { return by_id_.size(); }

  private:
    std::unordered_map<Term, TermId, TermHash> index_;
    std::vector<const Term*> by_id_;
};

using IdTriple = std::array<TermId, 3>;  // always (s, p, o)

// In-memory triple store with SPO / POS / OSP orderings. Set semantics:
// duplicate inserts are collapsed. Bulk-load is single-writer; once sealed
// (explicitly or by the first read) the store supports concurrent readers.
class GraphStore {
  public:
    explicit GraphStore(std::shared_ptr<TermPool> pool = nullptr);

    TermPool& pool() { return *pool_; }
    const TermPool& pool() const { return *pool_; }
    std::shared_ptr<TermPool> pool_ptr() const { return pool_; }

    void insert(const Triple& t);
    void insert_ids(TermId s, TermId p, TermId o);

    size_t size() const;

    // nullopt = wildcard position.
    struct Pattern {
        std::optional<TermId> s, p, o;
    };

    std::vector<IdTriple> match(const Pattern& q) const;
    void for_each(const Pattern& q, const std::function<void(const IdTriple&)>& fn) const;
    size_t count(const Pattern& q) const;
    bool contains(TermId s, TermId p, TermId o) const;

    // Which ordering a pattern shape resolves to; exposed for plan output.
    enum class IndexChoice { Spo, Pos, Osp, Scan };
    IndexChoice index_for(const Pattern& q) const;

    // All triples in (s, p, o) id order.
    const std::vector<IdTriple>& triples() const;

    void seal();
    bool sealed() const { return sealed_; }

  private:
    void ensure_sealed() const;
    std::pair<const IdTriple*, const IdTriple*> range(const Pattern& q, IndexChoice ix) const;

    std::shared_ptr<TermPool> pool_;
    mutable std::vector<IdTriple> spo_;  // (s,p,o)
    mutable std::vector<IdTriple> pos_;  // stored as (p,o,s)
    mutable std::vector<IdTriple> osp_;  // stored as (o,s,p)
    mutable bool sealed_ = true;
};

}  // namespace owa::rdf
