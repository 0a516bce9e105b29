#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hornlog/signature.hpp"
#include "hornlog/union_find.hpp"

namespace hornlog {

struct ElementId {
    SortId sort = 0;
    std::uint32_t index = 0;

    friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

/// Element indices of one tuple; the sorts are implied by the relation's arity.
using Tuple = std::vector<std::uint32_t>;

/// A tuple rewritten during a merge: it now reads `tuple` in relation `rel`.
struct RewrittenTuple {
    RelId rel;
    Tuple tuple;
};

/// A finite relational structure with equality tracked by a union-find per sort.
///
/// Elements are never deleted: merging keeps the losing index allocated but
/// non-canonical. Every stored tuple is canonical, i.e. each component is the
/// representative of its class, and merges re-canonicalize eagerly.
class Structure {
public:
    explicit Structure(SignaturePtr sig);

    const Signature& signature() const { return *sig_; }
    const SignaturePtr& signature_ptr() const { return sig_; }

    ElementId add_element(SortId sort, std::string name = {});
    bool add_tuple(RelId rel, std::span<const ElementId> elements);
    /// Index form of add_tuple; component sorts come from the arity.
    bool add_tuple(RelId rel, Tuple tuple);

    /// Merges the classes of a and b. Returns the surviving representative.
    /// When `rewritten` is given, every tuple that had to be re-inserted under
    /// its new canonical form is appended to it.
    ElementId merge(ElementId a, ElementId b, std::vector<RewrittenTuple>* rewritten = nullptr);

    ElementId find(ElementId e) const;
    std::uint32_t find(SortId sort, std::uint32_t index) const { return carriers_[sort].find(index); }
    bool is_canonical(ElementId e) const;
    Tuple canonical(RelId rel, Tuple tuple) const;

    /// Membership up to equivalence of components.
    bool contains(RelId rel, const Tuple& tuple) const;

    /// Allocated indices, canonical or not.
    std::size_t element_count(SortId sort) const { return carriers_[sort].size(); }
    std::size_t canonical_count(SortId sort) const { return carriers_[sort].root_count(); }
    std::vector<std::uint32_t> canonical_elements(SortId sort) const;
    std::size_t total_canonical_count() const;

    const std::set<Tuple>& tuples(RelId rel) const { return relations_[rel]; }
    std::size_t total_tuple_count() const;

    const std::string& name(ElementId e) const { return names_[e.sort][e.index]; }
    void set_name(ElementId e, std::string name) { names_[e.sort][e.index] = std::move(name); }

    /// Full scan of the canonical-tuple invariant and arity bounds.
    bool check_invariants() const;

    /// Same signature shape, same allocated elements, same equivalence, same
    /// tuples. Names are ignored.
    friend bool operator==(const Structure& a, const Structure& b);

private:
    void check_element(ElementId e) const;
    void check_tuple(RelId rel, const Tuple& tuple) const;

    SignaturePtr sig_;
    std::vector<UnionFind> carriers_;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::set<Tuple>> relations_;
};

/// True iff `f` is a function symbol whose relation is defined on every
/// argument tuple of canonical elements. Throws for predicates.
bool is_total_function(const Structure& x, RelId f);

/// True iff every function symbol's relation is the graph of a partial function.
bool is_algebraic(const Structure& x);

/// Builds a structure with `size[s]` unnamed elements in each sort s.
Structure make_structure(SignaturePtr sig, std::span<const std::size_t> sizes);

}  // namespace hornlog
