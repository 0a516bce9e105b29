#include "hornlog/flatten.hpp"

namespace hornlog {

RelationalizedSignature relationalized(SignaturePtr algebraic) {
    auto relational = std::make_shared<const Signature>(relationalize(*algebraic));
    return RelationalizedSignature{std::move(algebraic), std::move(relational)};
}

std::string FreshNames::next() {
    for (;;) {
        auto name = "_u" + std::to_string(counter_++);
        if (!taken_.count(name)) return name;
    }
}

namespace {

void names(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) {
        out.insert(t.var);
        return;
    }
    for (const auto& a : t.args) names(a, out);
}

void names(const Formula& f, std::set<std::string>& out) {
    for (const auto& atom : f)
        for (const auto& t : atom.args) names(t, out);
}

}  // namespace

std::set<std::string> variable_names(const Formula& f) {
    std::set<std::string> out;
    names(f, out);
    return out;
}

std::set<std::string> variable_names(const Sequent& s) {
    std::set<std::string> out;
    names(s.premise, out);
    names(s.conclusion, out);
    return out;
}

FlatteningResult flatten_term(const Term& t, FreshNames& fresh) {
    if (t.is_var()) return FlatteningResult{{}, t};
    FlatteningResult out;
    std::vector<Term> graph;
    for (const auto& a : t.args) {
        auto child = flatten_term(a, fresh);
        out.formula.insert(out.formula.end(), child.formula.begin(), child.formula.end());
        graph.push_back(std::move(child.result));
    }
    out.result = Term::variable(fresh.next(), t.sort);
    graph.push_back(out.result);
    out.formula.push_back(Atom::relation(*t.func, std::move(graph)));
    return out;
}

Formula flatten_formula(const Formula& f, FreshNames& fresh) {
    Formula out;
    for (const auto& atom : f) {
        std::vector<Term> results;
        for (const auto& t : atom.args) {
            auto child = flatten_term(t, fresh);
            out.insert(out.end(), child.formula.begin(), child.formula.end());
            results.push_back(std::move(child.result));
        }
        out.push_back(Atom{atom.kind, atom.rel, std::move(results)});
    }
    return out;
}

Formula flatten_formula(const Formula& f) {
    FreshNames fresh(variable_names(f));
    return flatten_formula(f, fresh);
}

Sequent flatten_sequent(const Sequent& s) {
    FreshNames fresh(variable_names(s));
    Sequent out;
    out.premise = flatten_formula(s.premise, fresh);
    out.conclusion = flatten_formula(s.conclusion, fresh);
    out.loc = s.loc;
    return out;
}

Theory flatten_theory(const Theory& t) {
    Theory out{relationalized(t.sig).relational, {}};
    for (const auto& s : t.sequents) out.sequents.push_back(flatten_sequent(s));
    return out;
}

Formula unflatten_formula(const Formula& f, const Signature& algebraic) {
    Formula out;
    for (const auto& atom : f) {
        if (atom.kind == Atom::Kind::Rel && algebraic.rel(atom.rel).is_function()) {
            std::vector<Term> args(atom.args.begin(), atom.args.end() - 1);
            out.push_back(Atom::equal(Term::apply(algebraic, atom.rel, std::move(args)), atom.args.back()));
        } else {
            out.push_back(atom);
        }
    }
    return out;
}

Sequent unflatten_sequent(const Sequent& s, const Signature& algebraic) {
    return Sequent{unflatten_formula(s.premise, algebraic), unflatten_formula(s.conclusion, algebraic), s.loc};
}

}  // namespace hornlog
