#include "hornlog/transform.hpp"

#include <map>
#include <set>

#include "hornlog/errors.hpp"
#include "hornlog/flatten.hpp"

namespace hornlog {

namespace {

std::string eq_name(const Signature& sig, SortId s) { return "Eq_" + sig.sort_name(s); }

void require_rhl(const Theory& t, const char* what) {
    if (!is_rhl(t)) throw PreconditionError(std::string(what) + " needs a relational theory");
}

Atom eq_atom(const Signature& setoid, const Term& a, const Term& b) {
    return Atom::relation(eq_relation(setoid, a.sort), {a, b});
}

Formula replace_equalities(const Formula& f, const Signature& setoid) {
    Formula out;
    for (const auto& a : f) {
        if (a.kind == Atom::Kind::Equal)
            out.push_back(eq_atom(setoid, a.args[0], a.args[1]));
        else
            out.push_back(a);
    }
    return out;
}

void equivalence_sequents(const Signature& setoid, std::size_t sorts, std::vector<Sequent>& out) {
    for (SortId s = 0; s < sorts; ++s) {
        auto x = Term::variable("x", s), y = Term::variable("y", s), z = Term::variable("z", s);
        out.push_back(Sequent{{Atom::defined(x)}, {eq_atom(setoid, x, x)}, {}});
        out.push_back(Sequent{{eq_atom(setoid, x, y)}, {eq_atom(setoid, y, x)}, {}});
        out.push_back(Sequent{{eq_atom(setoid, x, y), eq_atom(setoid, y, z)}, {eq_atom(setoid, x, z)}, {}});
    }
}

}  // namespace

SignaturePtr setoid_signature(const Signature& sig) {
    auto out = std::make_shared<Signature>(sig);
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        const auto name = eq_name(sig, s);
        if (sig.find_relation(name)) throw SignatureError("setoid transformation: '" + name + "' is already declared");
        out->add_predicate(name, {s, s});
    }
    return out;
}

RelId eq_relation(const Signature& setoid, SortId s) { return setoid.relation(eq_name(setoid, s)); }

Theory setoid_transform(const Theory& t) {
    require_rhl(t, "the setoid transformation");
    const auto sig = setoid_signature(*t.sig);
    Theory out{sig, {}};
    equivalence_sequents(*sig, t.sig->sort_count(), out.sequents);
    for (RelId r = 0; r < t.sig->relation_count(); ++r) {
        const auto& arity = t.sig->rel(r).arity;
        std::vector<Term> vs, us;
        Sequent s;
        for (std::size_t i = 0; i < arity.size(); ++i) {
            vs.push_back(Term::variable("v" + std::to_string(i + 1), arity[i]));
            us.push_back(Term::variable("u" + std::to_string(i + 1), arity[i]));
        }
        s.premise.push_back(Atom::relation(r, vs));
        for (std::size_t i = 0; i < arity.size(); ++i) s.premise.push_back(eq_atom(*sig, vs[i], us[i]));
        s.conclusion.push_back(Atom::relation(r, us));
        out.sequents.push_back(std::move(s));
    }
    for (const auto& s : t.sequents)
        out.sequents.push_back(
            Sequent{replace_equalities(s.premise, *sig), replace_equalities(s.conclusion, *sig), s.loc});
    return out;
}

Theory sparse_setoid_transform(const Theory& t) {
    require_rhl(t, "the sparse setoid transformation");
    const auto sig = setoid_signature(*t.sig);
    Theory out{sig, {}};
    equivalence_sequents(*sig, t.sig->sort_count(), out.sequents);
    for (const auto& s : t.sequents) {
        auto taken = variable_names(s);
        Sequent r{replace_equalities(s.premise, *sig), replace_equalities(s.conclusion, *sig), s.loc};
        std::map<std::string, std::size_t> seen;
        Formula links;
        for (auto& a : r.premise) {
            for (auto& term : a.args) {
                const auto k = ++seen[term.var];
                if (k < 2) continue;
                auto name = term.var + std::to_string(k);
                while (taken.count(name)) name += "_";
                taken.insert(name);
                auto renamed = Term::variable(name, term.sort);
                links.push_back(eq_atom(*sig, term, renamed));
                term = std::move(renamed);
            }
        }
        r.premise.insert(r.premise.end(), links.begin(), links.end());
        out.sequents.push_back(std::move(r));
    }
    return out;
}

Structure quotient_model(const Structure& y, SignaturePtr original) {
    const auto& sig = y.signature();
    Structure x(original);
    for (SortId s = 0; s < original->sort_count(); ++s) {
        const auto& eq = y.tuples(eq_relation(sig, s));
        const auto els = y.canonical_elements(s);
        for (auto e : els)
            if (!eq.count(Tuple{e, e})) throw PreconditionError(eq_name(sig, s) + " is not reflexive");
        for (const auto& t : eq)
            if (!eq.count(Tuple{t[1], t[0]})) throw PreconditionError(eq_name(sig, s) + " is not symmetric");
        for (const auto& t : eq)
            for (auto it = eq.lower_bound(Tuple{t[1]}); it != eq.end() && (*it)[0] == t[1]; ++it)
                if (!eq.count(Tuple{t[0], (*it)[1]})) throw PreconditionError(eq_name(sig, s) + " is not transitive");
    }
    std::vector<std::vector<std::uint32_t>> image(original->sort_count());
    for (SortId s = 0; s < original->sort_count(); ++s) {
        image[s].assign(y.element_count(s), 0);
        const auto& eq = y.tuples(eq_relation(sig, s));
        // The class of e is {e' | Eq(e, e')}; its smallest member represents it.
        std::map<std::uint32_t, std::uint32_t> rep_to_new;
        for (auto e : y.canonical_elements(s)) {
            const auto rep = (*eq.lower_bound(Tuple{e}))[1];
            auto it = rep_to_new.find(rep);
            if (it == rep_to_new.end()) it = rep_to_new.emplace(rep, x.add_element(s, y.name({s, rep})).index).first;
            image[s][e] = it->second;
        }
        for (std::uint32_t i = 0; i < image[s].size(); ++i) image[s][i] = image[s][y.find(s, i)];
    }
    for (RelId r = 0; r < original->relation_count(); ++r) {
        const auto& arity = original->rel(r).arity;
        for (const auto& t : y.tuples(r)) {
            Tuple q(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) q[i] = image[arity[i]][t[i]];
            x.add_tuple(r, std::move(q));
        }
    }
    return x;
}

Structure diagonal_embed(const Structure& x, SignaturePtr setoid) {
    Structure y(setoid);
    const auto& sig = *setoid;
    std::vector<std::vector<std::uint32_t>> image(x.signature().sort_count());
    for (SortId s = 0; s < image.size(); ++s) {
        image[s].assign(x.element_count(s), 0);
        for (auto e : x.canonical_elements(s)) image[s][e] = y.add_element(s, x.name({s, e})).index;
        for (std::uint32_t i = 0; i < image[s].size(); ++i) image[s][i] = image[s][x.find(s, i)];
        const auto eq = eq_relation(sig, s);
        for (auto e : x.canonical_elements(s)) y.add_tuple(eq, Tuple{image[s][e], image[s][e]});
    }
    for (RelId r = 0; r < x.signature().relation_count(); ++r) {
        const auto& arity = x.signature().rel(r).arity;
        for (const auto& t : x.tuples(r)) {
            Tuple q(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) q[i] = image[arity[i]][t[i]];
            y.add_tuple(r, std::move(q));
        }
    }
    return y;
}

namespace {

Term substitute(const Term& t, const std::map<std::string, Term>& sub) {
    if (t.is_var()) {
        auto it = sub.find(t.var);
        return it == sub.end() ? t : it->second;
    }
    Term out = t;
    for (auto& a : out.args) a = substitute(a, sub);
    return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& sub) {
    Formula out = f;
    for (auto& a : out)
        for (auto& t : a.args) t = substitute(t, sub);
    return out;
}

}  // namespace

Theory epic_transform(const Theory& t) {
    require_rhl(t, "the epic transformation");
    auto sig = std::make_shared<Signature>(*t.sig);
    struct Plan {
        std::vector<Term> params;
        std::vector<std::pair<Variable, RelId>> functions;
    };
    std::vector<Plan> plans;
    for (std::size_t k = 0; k < t.sequents.size(); ++k) {
        const auto& s = t.sequents[k];
        Plan p;
        std::vector<SortId> arg_sorts;
        for (const auto& v : variables(s.premise)) {
            p.params.push_back(Term::variable(v.name, v.sort));
            arg_sorts.push_back(v.sort);
        }
        for (const auto& v : conclusion_only_variables(s)) {
            const auto name = "f_" + std::to_string(k) + "_" + v.name;
            if (sig->find_relation(name)) throw SignatureError("epic transformation: '" + name + "' is already declared");
            p.functions.emplace_back(v, sig->add_function(name, arg_sorts, v.sort));
        }
        plans.push_back(std::move(p));
    }

    Theory out{sig, {}};
    for (std::size_t k = 0; k < t.sequents.size(); ++k) {
        const auto& s = t.sequents[k];
        const auto& p = plans[k];
        std::map<std::string, Term> sub;
        for (const auto& [v, f] : p.functions) sub.emplace(v.name, Term::apply(*sig, f, p.params));
        out.sequents.push_back(Sequent{s.premise, substitute(s.conclusion, sub), s.loc});
        if (p.functions.empty()) continue;
        if (!s.premise.empty())
            for (const auto& [v, f] : p.functions)
                out.sequents.push_back(Sequent{{Atom::defined(sub.at(v.name))}, s.premise, s.loc});
        Sequent unique;
        unique.premise = s.premise;
        unique.premise.insert(unique.premise.end(), s.conclusion.begin(), s.conclusion.end());
        for (const auto& [v, f] : p.functions)
            unique.conclusion.push_back(Atom::equal(Term::variable(v.name, v.sort), sub.at(v.name)));
        unique.loc = s.loc;
        out.sequents.push_back(std::move(unique));
    }
    return out;
}

Structure reduct(const Structure& x, SignaturePtr smaller) {
    Structure y(smaller);
    std::vector<std::vector<std::uint32_t>> image(smaller->sort_count());
    for (SortId s = 0; s < image.size(); ++s) {
        image[s].assign(x.element_count(s), 0);
        for (auto e : x.canonical_elements(s)) image[s][e] = y.add_element(s, x.name({s, e})).index;
    }
    for (RelId r = 0; r < smaller->relation_count(); ++r) {
        const auto& arity = smaller->rel(r).arity;
        for (const auto& t : x.tuples(r)) {
            Tuple q(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) q[i] = image[arity[i]][t[i]];
            y.add_tuple(r, std::move(q));
        }
    }
    return y;
}

}  // namespace hornlog
