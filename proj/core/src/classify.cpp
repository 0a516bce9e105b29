#include "hornlog/classify.hpp"

#include <set>

#include "hornlog/colimits.hpp"
#include "hornlog/engine.hpp"
#include "hornlog/errors.hpp"

namespace hornlog {

namespace {

struct Built {
    Structure structure;
    /// Element allocated for each variable, before equalities were applied.
    std::vector<std::pair<Variable, ElementId>> raw;
};

Built build(const Formula& f, SignaturePtr sig) {
    Built out{Structure(std::move(sig)), {}};
    std::map<std::string, ElementId> by_name;
    for (const auto& v : variables(f)) {
        auto e = out.structure.add_element(v.sort, v.name);
        by_name.emplace(v.name, e);
        out.raw.emplace_back(v, e);
    }
    for (const auto& a : f) {
        for (const auto& t : a.args)
            if (!t.is_var()) throw PreconditionError("classifying structures need relational formulas");
        if (a.kind == Atom::Kind::Rel) {
            std::vector<ElementId> t;
            for (const auto& arg : a.args) t.push_back(by_name.at(arg.var));
            out.structure.add_tuple(a.rel, t);
        }
    }
    for (const auto& a : f)
        if (a.kind == Atom::Kind::Equal) out.structure.merge(by_name.at(a.args[0].var), by_name.at(a.args[1].var));
    return out;
}

Formula conjunction(const Sequent& s) {
    Formula f = s.premise;
    f.insert(f.end(), s.conclusion.begin(), s.conclusion.end());
    return f;
}

}  // namespace

Classifying classifying_structure(const Formula& f, SignaturePtr sig) {
    auto b = build(f, std::move(sig));
    Classifying out{nullptr, {}};
    for (const auto& [v, e] : b.raw) out.interpretation.emplace(v.name, b.structure.find(e));
    out.structure = share(std::move(b.structure));
    return out;
}

Morphism classifying_morphism(const Sequent& s, SignaturePtr sig) {
    auto a = build(s.premise, sig);
    auto b = classifying_structure(conjunction(s), sig);
    std::vector<std::vector<std::uint32_t>> m(sig->sort_count());
    for (SortId k = 0; k < m.size(); ++k) m[k].resize(a.structure.element_count(k));
    for (const auto& [v, e] : a.raw) m[e.sort][e.index] = b.interpretation.at(v.name).index;
    return make_morphism(share(std::move(a.structure)), b.structure, std::move(m));
}

Classifying classifying_algebra(const Formula& f, SignaturePtr algebraic) {
    const auto rel = relationalized(algebraic).relational;
    auto flat = classifying_structure(flatten_formula(f), rel);
    EvalConfig cfg;
    cfg.epic_origin = true;
    auto result = evaluate(functionality_theory(algebraic), flat.structure, cfg);
    Classifying out{result.model, {}};
    const auto names = variable_names(f);
    for (const auto& [name, e] : flat.interpretation)
        if (names.count(name)) out.interpretation.emplace(name, result.unit(e));
    return out;
}

Sequent sequent_from_morphism(const Morphism& f) {
    const auto& x = *f.domain;
    const auto& y = *f.codomain;
    const auto& sig = x.signature();
    std::vector<std::size_t> counter(sig.sort_count(), 0);
    auto fresh = [&](SortId s) {
        return Term::variable("_e" + sig.sort_name(s) + "#" + std::to_string(counter[s]++), s);
    };

    // Variables for X, then for the elements of Y outside the image.
    std::vector<std::map<std::uint32_t, Term>> vx(sig.sort_count()), wy(sig.sort_count());
    std::vector<std::map<std::uint32_t, std::vector<std::uint32_t>>> preimages(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        for (auto i : x.canonical_elements(s)) {
            vx[s].emplace(i, fresh(s));
            preimages[s][y.find(s, f(s, i))].push_back(i);
        }
    }
    std::vector<std::set<std::uint32_t>> image(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        for (auto i : y.canonical_elements(s)) {
            auto it = preimages[s].find(i);
            if (it != preimages[s].end())
                wy[s].emplace(i, vx[s].at(it->second.front()));
            else
                wy[s].emplace(i, fresh(s));
        }
    }

    auto bound_elements = [&](const Structure& z) {
        std::vector<std::set<std::uint32_t>> out(sig.sort_count());
        for (RelId r = 0; r < sig.relation_count(); ++r) {
            const auto& arity = sig.rel(r).arity;
            for (const auto& t : z.tuples(r))
                for (std::size_t i = 0; i < t.size(); ++i) out[arity[i]].insert(t[i]);
        }
        return out;
    };

    Sequent out;
    const auto x_bound = bound_elements(x);
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (const auto& [i, v] : vx[s])
            if (!x_bound[s].count(i)) out.premise.push_back(Atom::defined(v));
    for (RelId r = 0; r < sig.relation_count(); ++r) {
        const auto& arity = sig.rel(r).arity;
        for (const auto& t : x.tuples(r)) {
            std::vector<Term> args;
            for (std::size_t i = 0; i < t.size(); ++i) args.push_back(vx[arity[i]].at(t[i]));
            out.premise.push_back(Atom::relation(r, std::move(args)));
        }
    }

    const auto y_bound = bound_elements(y);
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (const auto& [i, w] : wy[s])
            if (!preimages[s].count(i) && !y_bound[s].count(i)) out.conclusion.push_back(Atom::defined(w));
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        for (const auto& [target, pre] : preimages[s])
            for (std::size_t k = 1; k < pre.size(); ++k)
                out.conclusion.push_back(Atom::equal(vx[s].at(pre.front()), vx[s].at(pre[k])));
    }
    std::set<std::pair<RelId, std::vector<std::string>>> in_premise;
    for (const auto& a : out.premise) {
        if (a.kind != Atom::Kind::Rel) continue;
        std::vector<std::string> names;
        for (const auto& t : a.args) names.push_back(t.var);
        in_premise.emplace(a.rel, std::move(names));
    }
    for (RelId r = 0; r < sig.relation_count(); ++r) {
        const auto& arity = sig.rel(r).arity;
        for (const auto& t : y.tuples(r)) {
            std::vector<Term> args;
            std::vector<std::string> names;
            for (std::size_t i = 0; i < t.size(); ++i) {
                args.push_back(wy[arity[i]].at(t[i]));
                names.push_back(args.back().var);
            }
            if (in_premise.count({r, names})) continue;
            out.conclusion.push_back(Atom::relation(r, std::move(args)));
        }
    }
    return out;
}

SequentFlags classify_sequent(const Sequent& s, const Signature& sig) {
    SequentFlags out;
    out.is_rhl = is_rhl(s, sig);
    const bool valid_phl = is_valid_phl(s, sig);
    const bool conclusion_bound = conclusion_only_variables(s).empty();
    out.epic_phl = valid_phl && conclusion_bound;

    const Sequent flat = out.is_rhl ? s : flatten_sequent(s);
    out.surjective = conclusion_only_variables(flat).empty();
    out.injective = true;
    for (const auto& a : flat.conclusion)
        if (a.kind == Atom::Kind::Equal) out.injective = false;

    if (out.is_rhl) {
        bool only_rel = true, rel_or_sortquant = true;
        for (const auto* f : {&s.premise, &s.conclusion}) {
            for (const auto& a : *f) {
                if (a.kind != Atom::Kind::Rel) only_rel = false;
                if (a.kind == Atom::Kind::Equal) rel_or_sortquant = false;
            }
        }
        out.datalog = only_rel && conclusion_bound;
        out.datalog_sortquant = rel_or_sortquant && conclusion_bound;
        out.datalog_choice = rel_or_sortquant;
    }
    return out;
}

Theory functionality_theory(SignaturePtr algebraic) {
    Theory out{relationalized(algebraic).relational, {}};
    for (auto f : algebraic->functions()) {
        const auto& rel = algebraic->rel(f);
        std::vector<Term> args;
        const auto params = rel.arguments();
        for (std::size_t i = 0; i < params.size(); ++i)
            args.push_back(Term::variable("v" + std::to_string(i + 1), params[i]));
        auto graph = [&](const char* result) {
            auto a = args;
            a.push_back(Term::variable(result, rel.result()));
            return Atom::relation(f, std::move(a));
        };
        Sequent s;
        s.premise = {graph("u0"), graph("u1")};
        s.conclusion = {Atom::equal(Term::variable("u0", rel.result()), Term::variable("u1", rel.result()))};
        out.sequents.push_back(std::move(s));
    }
    return out;
}

Sequent totality_sequent(const Signature& algebraic, RelId f) {
    const auto& rel = algebraic.rel(f);
    if (!rel.is_function()) throw SignatureError("'" + rel.name + "' is not a function symbol");
    Sequent s;
    std::vector<Term> args;
    const auto params = rel.arguments();
    for (std::size_t i = 0; i < params.size(); ++i) {
        args.push_back(Term::variable("v" + std::to_string(i + 1), params[i]));
        s.premise.push_back(Atom::defined(args.back()));
    }
    s.conclusion.push_back(Atom::defined(Term::apply(algebraic, f, std::move(args))));
    return s;
}

Theory to_rhl(const Theory& t) {
    if (!t.sig->has_functions()) return t;
    auto out = flatten_theory(t);
    for (auto& s : functionality_theory(t.sig).sequents) out.sequents.push_back(std::move(s));
    return out;
}

Theory strengthen_theory(const Theory& t) {
    if (!is_rhl(t)) throw PreconditionError("strengthening needs a relational theory");
    Theory out = t;
    for (const auto& s : t.sequents) {
        auto cd = codiagonal(classifying_morphism(s, t.sig));
        out.sequents.push_back(sequent_from_morphism(cd.fold));
    }
    return out;
}

}  // namespace hornlog
