#pragma once

#include <utility>
#include <vector>

#include "hornlog/morphism.hpp"

namespace hornlog {

struct Coproduct {
    StructurePtr object;
    std::vector<Morphism> injections;
};

struct Pushout {
    StructurePtr object;
    Morphism from_left;   ///< B -> Y for f : A -> B
    Morphism from_right;  ///< X -> Y for g : A -> X
};

struct Quotient {
    StructurePtr object;
    Morphism projection;
};

/// Disjoint union of carriers and tuple sets. Only canonical elements are
/// copied; they keep their relative order, structure by structure.
Coproduct coproduct(const SignaturePtr& sig, const std::vector<StructurePtr>& parts);

/// Y = (B + X) / ~ with f(a) ~ g(a) for every a in A.
Pushout pushout(const Morphism& f, const Morphism& g);

/// Merges each pair in turn; the projection sends every element to its class.
Quotient quotient_by_relation(const Structure& x, const std::vector<std::pair<ElementId, ElementId>>& pairs);

/// The map B +_A B -> B that collapses both copies of B, for f : A -> B.
struct Codiagonal {
    Pushout square;
    Morphism fold;
};
Codiagonal codiagonal(const Morphism& f);

}  // namespace hornlog
