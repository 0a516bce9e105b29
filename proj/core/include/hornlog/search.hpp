#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hornlog/morphism.hpp"

namespace hornlog {

/// Per-sort, per-domain-index prescribed images. Entries for non-canonical
/// domain indices are ignored.
using PartialMap = std::vector<std::vector<std::optional<std::uint32_t>>>;

PartialMap empty_partial_map(const Structure& domain);

struct SearchOptions {
    bool injective = false;
    const PartialMap* fixed = nullptr;
    /// Stop after this many morphisms (0 = no limit).
    std::size_t limit = 0;
};

/// Backtracking enumeration of all morphisms domain -> codomain, in
/// lexicographic order of the images of canonical domain elements (sorted by
/// sort, then index). `visit` returns false to stop early. Returns the number
/// of morphisms visited. Exponential; intended for desk-scale structures.
std::size_t enumerate_morphisms(const StructurePtr& domain, const StructurePtr& codomain,
                                const SearchOptions& options,
                                const std::function<bool(const Morphism&)>& visit);

/// Counting variant that never materializes morphisms.
std::size_t count_morphisms(const Structure& domain, const Structure& codomain, const SearchOptions& options);

/// A bijection on canonical elements that preserves and reflects all
/// relations, if one exists.
std::optional<Morphism> find_isomorphism(const StructurePtr& x, const StructurePtr& y);

/// True iff there are isomorphisms dom f ~ dom g and cod f ~ cod g making the
/// square with f and g commute.
bool arrows_isomorphic(const Morphism& f, const Morphism& g);

}  // namespace hornlog
