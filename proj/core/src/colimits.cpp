#include "hornlog/colimits.hpp"

namespace hornlog {

namespace {

void require_shape(const Signature& a, const Signature& b, const char* what) {
    if (!a.same_shape(b)) throw SignatureError(std::string(what) + ": structures do not share a signature");
}

}  // namespace

Coproduct coproduct(const SignaturePtr& sig, const std::vector<StructurePtr>& parts) {
    Structure sum(sig);
    std::vector<std::vector<std::vector<std::uint32_t>>> maps;
    maps.reserve(parts.size());
    for (const auto& part : parts) {
        require_shape(*sig, part->signature(), "coproduct");
        std::vector<std::vector<std::uint32_t>> m(sig->sort_count());
        for (SortId s = 0; s < sig->sort_count(); ++s) {
            m[s].resize(part->element_count(s));
            for (auto i : part->canonical_elements(s)) m[s][i] = sum.add_element(s, part->name({s, i})).index;
            for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = m[s][part->find(s, i)];
        }
        for (RelId r = 0; r < sig->relation_count(); ++r) {
            const auto& arity = sig->rel(r).arity;
            for (const auto& t : part->tuples(r)) {
                Tuple image(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) image[i] = m[arity[i]][t[i]];
                sum.add_tuple(r, std::move(image));
            }
        }
        maps.push_back(std::move(m));
    }
    Coproduct out{share(std::move(sum)), {}};
    for (std::size_t k = 0; k < parts.size(); ++k)
        out.injections.push_back(Morphism{parts[k], out.object, std::move(maps[k])});
    return out;
}

Pushout pushout(const Morphism& f, const Morphism& g) {
    if (f.domain != g.domain && !(*f.domain == *g.domain))
        throw std::invalid_argument("pushout: morphisms do not share a domain");
    const auto& sig = f.codomain->signature_ptr();
    require_shape(*sig, g.codomain->signature(), "pushout");
    auto sum = coproduct(sig, {f.codomain, g.codomain});
    Structure y = *sum.object;
    const auto& a = *f.domain;
    for (SortId s = 0; s < sig->sort_count(); ++s)
        for (auto i : a.canonical_elements(s))
            y.merge(ElementId{s, sum.injections[0](s, f(s, i))}, ElementId{s, sum.injections[1](s, g(s, i))});

    auto object = share(std::move(y));
    auto finish = [&](const Morphism& inj) {
        auto m = inj.map;
        for (SortId s = 0; s < m.size(); ++s)
            for (auto& v : m[s]) v = object->find(s, v);
        return Morphism{inj.domain, object, std::move(m)};
    };
    return Pushout{object, finish(sum.injections[0]), finish(sum.injections[1])};
}

Quotient quotient_by_relation(const Structure& x, const std::vector<std::pair<ElementId, ElementId>>& pairs) {
    Structure q = x;
    for (const auto& [a, b] : pairs) q.merge(a, b);
    auto object = share(std::move(q));
    auto domain = share(x);
    std::vector<std::vector<std::uint32_t>> m(x.signature().sort_count());
    for (SortId s = 0; s < m.size(); ++s) {
        m[s].resize(x.element_count(s));
        for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = object->find(s, i);
    }
    return Quotient{object, Morphism{domain, object, std::move(m)}};
}

Codiagonal codiagonal(const Morphism& f) {
    auto square = pushout(f, f);
    const auto& b = *f.codomain;
    const auto& y = *square.object;
    std::vector<std::vector<std::uint32_t>> m(y.signature().sort_count());
    for (SortId s = 0; s < m.size(); ++s) {
        m[s].assign(y.element_count(s), 0);
        // Every element of Y is hit by one of the two copies of B.
        for (std::uint32_t i = 0; i < b.element_count(s); ++i) {
            m[s][square.from_left(s, i)] = b.find(s, i);
            m[s][square.from_right(s, i)] = b.find(s, i);
        }
        for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = m[s][y.find(s, i)];
    }
    Morphism fold{square.object, f.codomain, std::move(m)};
    return Codiagonal{std::move(square), std::move(fold)};
}

}  // namespace hornlog
