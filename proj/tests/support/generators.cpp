#include "generators.hpp"

#include <map>
#include <optional>
#include <set>

namespace hornlog::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Calls visit on every tuple over the canonical carriers of the given sorts.
template <class F>
void each_tuple(const Structure& x, std::span<const SortId> sorts, F&& visit) {
    std::vector<std::vector<std::uint32_t>> pools;
    for (auto s : sorts) pools.push_back(x.canonical_elements(s));
    for (const auto& p : pools)
        if (p.empty()) return;
    std::vector<std::size_t> pos(sorts.size(), 0);
    for (;;) {
        Tuple t(sorts.size());
        for (std::size_t i = 0; i < sorts.size(); ++i) t[i] = pools[i][pos[i]];
        visit(t);
        std::size_t i = 0;
        while (i < pos.size() && ++pos[i] == pools[i].size()) pos[i++] = 0;
        if (i == pos.size()) return;
    }
}

}  // namespace

Structure random_structure(Rng& rng, SignaturePtr sig, const StructureShape& shape) {
    Structure x(sig);
    for (SortId s = 0; s < sig->sort_count(); ++s) {
        const auto n = uniform(rng, shape.allow_empty_sorts ? 0 : 1, shape.max_per_sort);
        for (std::size_t i = 0; i < n; ++i) x.add_element(s, "e" + std::to_string(s) + "_" + std::to_string(i));
    }
    for (RelId r = 0; r < sig->relation_count(); ++r)
        each_tuple(x, sig->rel(r).arity, [&](const Tuple& t) {
            if (coin(rng, shape.density)) x.add_tuple(r, t);
        });
    return x;
}

Structure random_algebra(Rng& rng, SignaturePtr sig, std::size_t max_per_sort, double undefined, double density) {
    Structure x(sig);
    for (SortId s = 0; s < sig->sort_count(); ++s) {
        const auto n = uniform(rng, 0, max_per_sort);
        for (std::size_t i = 0; i < n; ++i) x.add_element(s, "e" + std::to_string(s) + "_" + std::to_string(i));
    }
    for (RelId r = 0; r < sig->relation_count(); ++r) {
        const auto& rel = sig->rel(r);
        if (!rel.is_function()) {
            each_tuple(x, rel.arity, [&](const Tuple& t) {
                if (coin(rng, density)) x.add_tuple(r, t);
            });
            continue;
        }
        const auto results = x.canonical_elements(rel.result());
        each_tuple(x, rel.arguments(), [&](const Tuple& args) {
            if (results.empty() || coin(rng, undefined)) return;
            Tuple t = args;
            t.push_back(results[uniform(rng, 0, results.size() - 1)]);
            x.add_tuple(r, std::move(t));
        });
    }
    return x;
}

namespace {

class SequentBuilder {
public:
    SequentBuilder(Rng& rng, const Signature& sig, const SequentShape& shape) : rng_(rng), sig_(sig), shape_(shape) {
        for (RelId r = 0; r < sig.relation_count(); ++r) {
            if (sig.rel(r).is_function())
                functions_.push_back(r);
            else
                predicates_.push_back(r);
        }
    }

    Sequent build() {
        Sequent s;
        const auto np = uniform(rng_, 0, shape_.max_premise_atoms);
        for (std::size_t i = 0; i < np; ++i)
            if (auto a = atom(true)) s.premise.push_back(std::move(*a));
        premise_vars_.clear();
        for (const auto& v : variables(s.premise)) premise_vars_[v.sort].insert(v.name);
        const auto nc = uniform(rng_, std::min<std::size_t>(1, shape_.max_conclusion_atoms), shape_.max_conclusion_atoms);
        for (std::size_t i = 0; i < nc; ++i)
            if (auto a = atom(false)) s.conclusion.push_back(std::move(*a));
        return s;
    }

private:
    Term variable(SortId s, bool premise) {
        auto& pool = premise_vars_[s];
        if (premise) {
            auto name = sig_.sort_name(s) + std::to_string(uniform(rng_, 0, shape_.max_vars_per_sort - 1));
            pool.insert(name);
            return Term::variable(name, s);
        }
        std::vector<std::string> options(pool.begin(), pool.end());
        if (shape_.allow_fresh && (options.empty() || coin(rng_, 0.3)))
            return Term::variable("n" + sig_.sort_name(s) + std::to_string(uniform(rng_, 0, 1)), s);
        // An empty name marks a dead end; the atom is retried.
        if (options.empty()) return Term::variable({}, s);
        return Term::variable(options[uniform(rng_, 0, options.size() - 1)], s);
    }

    Term term(SortId s, std::size_t depth, bool premise) {
        std::vector<RelId> fits;
        for (auto f : functions_)
            if (sig_.rel(f).result() == s) fits.push_back(f);
        if (depth == 0 || fits.empty() || coin(rng_, 0.4)) return variable(s, premise);
        const auto f = fits[uniform(rng_, 0, fits.size() - 1)];
        std::vector<Term> args;
        for (auto a : sig_.rel(f).arguments()) args.push_back(term(a, depth - 1, premise));
        return Term::apply(sig_, f, std::move(args));
    }

    std::optional<Atom> atom(bool premise) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            auto a = try_atom(premise);
            bool ok = true;
            for (const auto& t : a.args) ok = ok && valid(t);
            if (a.kind == Atom::Kind::Equal && a.args[0] == a.args[1]) ok = false;
            if (ok) return a;
        }
        return std::nullopt;
    }

    static bool valid(const Term& t) {
        if (t.is_var()) return !t.var.empty();
        for (const auto& a : t.args)
            if (!valid(a)) return false;
        return true;
    }

    Atom try_atom(bool premise) {
        const auto depth = shape_.term_depth;
        const auto roll = uniform(rng_, 0, 9);
        const SortId s = static_cast<SortId>(uniform(rng_, 0, sig_.sort_count() - 1));
        if (shape_.allow_equalities && roll < 2) return Atom::equal(term(s, depth, premise), term(s, depth, premise));
        if ((shape_.allow_sort_quantifiers || depth > 0) && roll < 4) return Atom::defined(term(s, depth, premise));
        const auto r = predicates_[uniform(rng_, 0, predicates_.size() - 1)];
        std::vector<Term> args;
        for (auto a : sig_.rel(r).arity) args.push_back(term(a, depth, premise));
        return Atom::relation(r, std::move(args));
    }

    Rng& rng_;
    const Signature& sig_;
    const SequentShape& shape_;
    std::vector<RelId> functions_;
    std::vector<RelId> predicates_;
    std::map<SortId, std::set<std::string>> premise_vars_;
};

}  // namespace

Sequent random_sequent(Rng& rng, const Signature& sig, const SequentShape& shape) {
    return SequentBuilder(rng, sig, shape).build();
}

Theory random_theory(Rng& rng, SignaturePtr sig, std::size_t max_sequents, const SequentShape& shape) {
    Theory t{sig, {}};
    const auto n = uniform(rng, 1, max_sequents);
    for (std::size_t i = 0; i < n; ++i) t.sequents.push_back(random_sequent(rng, *sig, shape));
    return t;
}

Morphism random_morphism(Rng& rng, SignaturePtr sig, std::size_t max_per_sort) {
    auto x = random_structure(rng, sig, {max_per_sort, 0.3, true});
    Structure y(sig);
    std::vector<std::vector<std::uint32_t>> map(sig->sort_count());
    for (SortId s = 0; s < sig->sort_count(); ++s) {
        const auto lo = x.element_count(s) ? 1 : 0;
        const auto n = uniform(rng, lo, max_per_sort);
        for (std::size_t i = 0; i < n; ++i) y.add_element(s, "y" + std::to_string(s) + "_" + std::to_string(i));
        for (std::uint32_t i = 0; i < x.element_count(s); ++i)
            map[s].push_back(static_cast<std::uint32_t>(uniform(rng, 0, n - 1)));
    }
    for (RelId r = 0; r < sig->relation_count(); ++r) {
        const auto& arity = sig->rel(r).arity;
        for (const auto& t : x.tuples(r)) {
            Tuple image(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) image[i] = map[arity[i]][t[i]];
            y.add_tuple(r, image);
        }
        each_tuple(y, arity, [&](const Tuple& t) {
            if (coin(rng, 0.15)) y.add_tuple(r, t);
        });
    }
    return make_morphism(share(std::move(x)), share(std::move(y)), std::move(map));
}

SignaturePtr graph_signature() {
    auto sig = std::make_shared<Signature>();
    auto v = sig->add_sort("V");
    sig->add_predicate("E", {v, v});
    return sig;
}

SignaturePtr two_sorted_signature() {
    auto sig = std::make_shared<Signature>();
    auto a = sig->add_sort("A");
    auto b = sig->add_sort("B");
    sig->add_predicate("R", {a, b});
    sig->add_predicate("E", {a, a});
    sig->add_predicate("P", {b});
    return sig;
}

SignaturePtr unary_binary_signature() {
    auto sig = std::make_shared<Signature>();
    auto v = sig->add_sort("V");
    sig->add_predicate("P", {v});
    sig->add_predicate("E", {v, v});
    return sig;
}

SignaturePtr algebraic_signature() {
    auto sig = std::make_shared<Signature>();
    auto s = sig->add_sort("S");
    sig->add_predicate("P", {s});
    sig->add_predicate("E", {s, s});
    sig->add_function("f", {s, s}, s);
    sig->add_function("g", {s}, s);
    sig->add_function("c", {}, s);
    return sig;
}

}  // namespace hornlog::testing
