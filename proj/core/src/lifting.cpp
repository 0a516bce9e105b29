#include "hornlog/lifting.hpp"

#include <algorithm>
#include <limits>

#include "hornlog/search.hpp"

namespace hornlog {

namespace {

/// Lifts b with b(f(p)) = a(p), capped. Zero straight away when a separates
/// two points that f identifies.
std::size_t lifts(const Morphism& f, const std::vector<std::vector<std::uint32_t>>& a, const Structure& x,
                  std::size_t cap) {
    const auto& dom = *f.domain;
    const auto& cod = *f.codomain;
    auto fixed = empty_partial_map(cod);
    for (SortId s = 0; s < fixed.size(); ++s) {
        for (auto p : dom.canonical_elements(s)) {
            const auto fp = cod.find(s, f(s, p));
            const auto target = x.find(s, a[s][p]);
            if (fixed[s][fp] && *fixed[s][fp] != target) return 0;
            fixed[s][fp] = target;
        }
    }
    SearchOptions opt;
    opt.fixed = &fixed;
    opt.limit = cap;
    return count_morphisms(cod, x, opt);
}

}  // namespace

LiftSummary summarize_lifts(const Structure& x, const Morphism& f) {
    LiftSummary out;
    out.min_lifts = std::numeric_limits<std::size_t>::max();
    auto target = share(x);
    enumerate_morphisms(f.domain, target, SearchOptions{}, [&](const Morphism& a) {
        ++out.maps_from_domain;
        const auto n = lifts(f, a.map, x, 2);
        out.min_lifts = std::min(out.min_lifts, n);
        if (n > 1) out.some_not_unique = true;
        return true;
    });
    if (out.maps_from_domain == 0) out.min_lifts = 0;
    return out;
}

bool is_injective_to(const Structure& x, const Morphism& f) {
    bool ok = true;
    auto target = share(x);
    enumerate_morphisms(f.domain, target, SearchOptions{}, [&](const Morphism& a) {
        ok = lifts(f, a.map, x, 1) > 0;
        return ok;
    });
    return ok;
}

bool is_orthogonal_to(const Structure& x, const Morphism& f) {
    bool ok = true;
    auto target = share(x);
    enumerate_morphisms(f.domain, target, SearchOptions{}, [&](const Morphism& a) {
        ok = lifts(f, a.map, x, 2) == 1;
        return ok;
    });
    return ok;
}

std::size_t count_lifts(const Morphism& f, const Morphism& a, std::size_t cap) {
    return lifts(f, a.map, *a.codomain, cap);
}

}  // namespace hornlog
