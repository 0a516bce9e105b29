#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hornlog/structure.hpp"

namespace hornlog {

using StructurePtr = std::shared_ptr<const Structure>;

inline StructurePtr share(Structure x) { return std::make_shared<const Structure>(std::move(x)); }

/// A sort-indexed map between two structures.
///
/// `map[s][i]` is the (canonical) codomain index of domain element i of sort
/// s. It is defined for every allocated domain index, canonical or not.
struct Morphism {
    StructurePtr domain;
    StructurePtr codomain;
    std::vector<std::vector<std::uint32_t>> map;

    std::uint32_t operator()(SortId s, std::uint32_t i) const { return map[s][i]; }
    ElementId operator()(ElementId e) const { return ElementId{e.sort, map[e.sort][e.index]}; }

    /// Equivalent domain elements map to the same codomain class.
    bool is_well_defined() const;
    /// The image of every domain tuple is a codomain tuple.
    bool preserves_relations() const;
    bool is_valid() const { return is_well_defined() && preserves_relations(); }

    /// Injective/surjective on canonical elements, per sort.
    bool is_injective() const;
    bool is_surjective() const;

    static Morphism identity(StructurePtr x);
};

/// g after f. Requires f.codomain and g.domain to be the same structure
/// (compared by value).
Morphism compose(const Morphism& g, const Morphism& f);

/// Builds a morphism from per-sort maps given on canonical elements only;
/// non-canonical indices are filled in through their representatives.
Morphism make_morphism(StructurePtr domain, StructurePtr codomain,
                       std::vector<std::vector<std::uint32_t>> canonical_map);

}  // namespace hornlog
