#include "hornlog/morphism.hpp"

#include <stdexcept>

namespace hornlog {

bool Morphism::is_well_defined() const {
    if (map.size() != domain->signature().sort_count()) return false;
    for (SortId s = 0; s < map.size(); ++s) {
        if (map[s].size() != domain->element_count(s)) return false;
        for (std::uint32_t i = 0; i < map[s].size(); ++i) {
            if (map[s][i] >= codomain->element_count(s)) return false;
            const auto rep = domain->find(s, i);
            if (codomain->find(s, map[s][i]) != codomain->find(s, map[s][rep])) return false;
        }
    }
    return true;
}

bool Morphism::preserves_relations() const {
    const auto& sig = domain->signature();
    for (RelId r = 0; r < sig.relation_count(); ++r) {
        const auto& arity = sig.rel(r).arity;
        for (const auto& t : domain->tuples(r)) {
            Tuple image(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) image[i] = map[arity[i]][t[i]];
            if (!codomain->contains(r, image)) return false;
        }
    }
    return true;
}

bool Morphism::is_injective() const {
    for (SortId s = 0; s < map.size(); ++s) {
        std::vector<bool> hit(codomain->element_count(s), false);
        for (auto i : domain->canonical_elements(s)) {
            auto y = codomain->find(s, map[s][i]);
            if (hit[y]) return false;
            hit[y] = true;
        }
    }
    return true;
}

bool Morphism::is_surjective() const {
    for (SortId s = 0; s < map.size(); ++s) {
        std::vector<bool> hit(codomain->element_count(s), false);
        for (auto i : domain->canonical_elements(s)) hit[codomain->find(s, map[s][i])] = true;
        for (auto y : codomain->canonical_elements(s))
            if (!hit[y]) return false;
    }
    return true;
}

Morphism Morphism::identity(StructurePtr x) {
    std::vector<std::vector<std::uint32_t>> m(x->signature().sort_count());
    for (SortId s = 0; s < m.size(); ++s) {
        m[s].resize(x->element_count(s));
        for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = x->find(s, i);
    }
    return Morphism{x, x, std::move(m)};
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.codomain != g.domain && !(*f.codomain == *g.domain))
        throw std::invalid_argument("compose: codomain of the first map is not the domain of the second");
    std::vector<std::vector<std::uint32_t>> m(f.map.size());
    for (SortId s = 0; s < m.size(); ++s) {
        m[s].resize(f.map[s].size());
        for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = g.map[s][f.map[s][i]];
    }
    return Morphism{f.domain, g.codomain, std::move(m)};
}

Morphism make_morphism(StructurePtr domain, StructurePtr codomain,
                       std::vector<std::vector<std::uint32_t>> canonical_map) {
    const auto sorts = domain->signature().sort_count();
    if (canonical_map.size() != sorts) throw std::invalid_argument("make_morphism: wrong number of sorts");
    for (SortId s = 0; s < sorts; ++s) {
        auto& m = canonical_map[s];
        if (m.size() != domain->element_count(s)) throw std::invalid_argument("make_morphism: wrong carrier size");
        for (std::uint32_t i = 0; i < m.size(); ++i) {
            if (domain->find(s, i) == i) m[i] = codomain->find(s, m[i]);
        }
        for (std::uint32_t i = 0; i < m.size(); ++i) m[i] = m[domain->find(s, i)];
    }
    return Morphism{std::move(domain), std::move(codomain), std::move(canonical_map)};
}

}  // namespace hornlog
