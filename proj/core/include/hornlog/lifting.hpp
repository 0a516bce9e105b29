#pragma once

#include <cstddef>

#include "hornlog/morphism.hpp"

namespace hornlog {

/// Brute force over all a : A -> X, counting b : B -> X with b . f = a, up to
/// `cap` lifts each. Returns the smallest lift count seen (so 0 means some a
/// has no lift) and whether any a had more than one lift.
struct LiftSummary {
    std::size_t maps_from_domain = 0;
    std::size_t min_lifts = 0;
    bool some_not_unique = false;
};

LiftSummary summarize_lifts(const Structure& x, const Morphism& f);

/// Every a : A -> X extends along f.
bool is_injective_to(const Structure& x, const Morphism& f);
/// Every a : A -> X extends along f in exactly one way.
bool is_orthogonal_to(const Structure& x, const Morphism& f);

/// Number of b : B -> X with b . f = a.
std::size_t count_lifts(const Morphism& f, const Morphism& a, std::size_t cap = 0);

}  // namespace hornlog
