#include "hornlog/search.hpp"

#include <algorithm>

namespace hornlog {

namespace {

struct Slot {
    SortId sort;
    std::uint32_t index;
};

struct TupleCheck {
    RelId rel;
    const Tuple* tuple;
};

/// Precomputed search order and the tuple checks that become decidable once
/// a slot is assigned.
class Searcher {
public:
    Searcher(const Structure& dom, const Structure& cod, const SearchOptions& opt)
        : dom_(dom), cod_(cod), opt_(opt), image_(dom.signature().sort_count()) {
        const auto& sig = dom.signature();
        std::vector<std::vector<std::int64_t>> position(sig.sort_count());
        for (SortId s = 0; s < sig.sort_count(); ++s) {
            position[s].assign(dom.element_count(s), -1);
            image_[s].assign(dom.element_count(s), 0);
            for (auto i : dom.canonical_elements(s)) {
                position[s][i] = static_cast<std::int64_t>(slots_.size());
                slots_.push_back(Slot{s, i});
            }
            candidates_.push_back(cod.canonical_elements(s));
        }
        checks_.resize(slots_.size());
        for (RelId r = 0; r < sig.relation_count(); ++r) {
            const auto& arity = sig.rel(r).arity;
            for (const auto& t : dom.tuples(r)) {
                std::int64_t last = -1;
                for (std::size_t i = 0; i < t.size(); ++i) last = std::max(last, position[arity[i]][t[i]]);
                if (last < 0)
                    nullary_.push_back(TupleCheck{r, &t});
                else
                    checks_[static_cast<std::size_t>(last)].push_back(TupleCheck{r, &t});
            }
        }
        if (opt.injective) {
            used_.resize(sig.sort_count());
            for (SortId s = 0; s < sig.sort_count(); ++s) used_[s].assign(cod.element_count(s), false);
        }
    }

    template <class Visit>
    std::size_t run(Visit&& visit) {
        for (const auto& c : nullary_)
            if (!cod_.tuples(c.rel).count(Tuple{})) return 0;
        stop_ = false;
        count_ = 0;
        descend(0, visit);
        return count_;
    }

    const std::vector<std::vector<std::uint32_t>>& image() const { return image_; }

private:
    bool tuple_ok(const TupleCheck& c) const {
        const auto& arity = dom_.signature().rel(c.rel).arity;
        scratch_.resize(c.tuple->size());
        for (std::size_t i = 0; i < c.tuple->size(); ++i) scratch_[i] = image_[arity[i]][(*c.tuple)[i]];
        return cod_.tuples(c.rel).count(scratch_) > 0;
    }

    template <class Visit>
    void descend(std::size_t k, Visit& visit) {
        if (stop_) return;
        if (k == slots_.size()) {
            ++count_;
            if (!visit()) stop_ = true;
            if (opt_.limit && count_ >= opt_.limit) stop_ = true;
            return;
        }
        const auto [s, i] = slots_[k];
        auto try_value = [&](std::uint32_t v) {
            if (opt_.injective && used_[s][v]) return;
            image_[s][i] = v;
            for (const auto& c : checks_[k])
                if (!tuple_ok(c)) return;
            if (opt_.injective) used_[s][v] = true;
            descend(k + 1, visit);
            if (opt_.injective) used_[s][v] = false;
        };
        if (opt_.fixed && (*opt_.fixed)[s][i]) {
            try_value(cod_.find(s, *(*opt_.fixed)[s][i]));
            return;
        }
        for (auto v : candidates_[s]) {
            try_value(v);
            if (stop_) return;
        }
    }

    const Structure& dom_;
    const Structure& cod_;
    const SearchOptions& opt_;
    std::vector<Slot> slots_;
    std::vector<std::vector<std::uint32_t>> candidates_;
    std::vector<std::vector<TupleCheck>> checks_;
    std::vector<TupleCheck> nullary_;
    std::vector<std::vector<std::uint32_t>> image_;
    std::vector<std::vector<bool>> used_;
    mutable Tuple scratch_;
    bool stop_ = false;
    std::size_t count_ = 0;
};

}  // namespace

PartialMap empty_partial_map(const Structure& domain) {
    PartialMap m(domain.signature().sort_count());
    for (SortId s = 0; s < m.size(); ++s) m[s].resize(domain.element_count(s));
    return m;
}

std::size_t enumerate_morphisms(const StructurePtr& domain, const StructurePtr& codomain,
                                const SearchOptions& options,
                                const std::function<bool(const Morphism&)>& visit) {
    Searcher searcher(*domain, *codomain, options);
    return searcher.run([&] {
        auto m = searcher.image();
        for (SortId s = 0; s < m.size(); ++s)
            for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = m[s][domain->find(s, i)];
        return visit(Morphism{domain, codomain, std::move(m)});
    });
}

std::size_t count_morphisms(const Structure& domain, const Structure& codomain, const SearchOptions& options) {
    Searcher searcher(domain, codomain, options);
    return searcher.run([] { return true; });
}

namespace {

bool same_counts(const Structure& x, const Structure& y) {
    if (!x.signature().same_shape(y.signature())) return false;
    for (SortId s = 0; s < x.signature().sort_count(); ++s)
        if (x.canonical_count(s) != y.canonical_count(s)) return false;
    for (RelId r = 0; r < x.signature().relation_count(); ++r)
        if (x.tuples(r).size() != y.tuples(r).size()) return false;
    return true;
}

}  // namespace

std::optional<Morphism> find_isomorphism(const StructurePtr& x, const StructurePtr& y) {
    if (!same_counts(*x, *y)) return std::nullopt;
    std::optional<Morphism> found;
    SearchOptions opt;
    opt.injective = true;
    // Injective + equal finite counts gives a bijection; a relation-preserving
    // bijection between equal-size relations also reflects them.
    enumerate_morphisms(x, y, opt, [&](const Morphism& m) {
        found = m;
        return false;
    });
    return found;
}

bool arrows_isomorphic(const Morphism& f, const Morphism& g) {
    if (!same_counts(*f.domain, *g.domain) || !same_counts(*f.codomain, *g.codomain)) return false;
    bool ok = false;
    SearchOptions dom_opt;
    dom_opt.injective = true;
    enumerate_morphisms(f.domain, g.domain, dom_opt, [&](const Morphism& phi) {
        // psi(f(x)) must equal g(phi(x)).
        auto fixed = empty_partial_map(*f.codomain);
        for (SortId s = 0; s < fixed.size(); ++s) {
            for (auto x : f.domain->canonical_elements(s)) {
                const auto fx = f.codomain->find(s, f(s, x));
                const auto target = g.codomain->find(s, g(s, phi(s, x)));
                if (fixed[s][fx] && *fixed[s][fx] != target) return true;
                fixed[s][fx] = target;
            }
        }
        SearchOptions cod_opt;
        cod_opt.injective = true;
        cod_opt.fixed = &fixed;
        cod_opt.limit = 1;
        if (count_morphisms(*f.codomain, *g.codomain, cod_opt) > 0) {
            ok = true;
            return false;
        }
        return true;
    });
    return ok;
}

}  // namespace hornlog
