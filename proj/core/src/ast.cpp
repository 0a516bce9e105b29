#include "hornlog/ast.hpp"

#include <map>
#include <set>

namespace hornlog {

Term Term::variable(std::string name, SortId sort) {
    Term t;
    t.var = std::move(name);
    t.sort = sort;
    return t;
}

Term Term::apply(const Signature& sig, RelId f, std::vector<Term> args) {
    Term t;
    t.func = f;
    t.args = std::move(args);
    t.sort = sig.rel(f).result();
    return t;
}

Atom Atom::relation(RelId r, std::vector<Term> args) { return Atom{Kind::Rel, r, std::move(args)}; }

Atom Atom::defined(Term t) {
    Atom a{Kind::Defined, 0, {}};
    a.args.push_back(std::move(t));
    return a;
}

Atom Atom::equal(Term lhs, Term rhs) {
    Atom a{Kind::Equal, 0, {}};
    a.args.push_back(std::move(lhs));
    a.args.push_back(std::move(rhs));
    return a;
}

namespace {

void collect(const Term& t, std::vector<Variable>& out, std::set<std::string>& seen) {
    if (t.is_var()) {
        if (seen.insert(t.var).second) out.push_back(Variable{t.var, t.sort});
        return;
    }
    for (const auto& a : t.args) collect(a, out, seen);
}

void collect(const Formula& f, std::vector<Variable>& out, std::set<std::string>& seen) {
    for (const auto& atom : f)
        for (const auto& t : atom.args) collect(t, out, seen);
}

}  // namespace

std::vector<Variable> variables(const Term& t) {
    std::vector<Variable> out;
    std::set<std::string> seen;
    collect(t, out, seen);
    return out;
}

std::vector<Variable> variables(const Formula& f) {
    std::vector<Variable> out;
    std::set<std::string> seen;
    collect(f, out, seen);
    return out;
}

std::vector<Variable> variables(const Sequent& s) {
    std::vector<Variable> out;
    std::set<std::string> seen;
    collect(s.premise, out, seen);
    collect(s.conclusion, out, seen);
    return out;
}

std::vector<Variable> conclusion_only_variables(const Sequent& s) {
    std::set<std::string> premise;
    for (const auto& v : variables(s.premise)) premise.insert(v.name);
    std::vector<Variable> out;
    for (const auto& v : variables(s.conclusion))
        if (!premise.count(v.name)) out.push_back(v);
    return out;
}

bool is_rhl(const Term& t) { return t.is_var(); }

bool is_rhl(const Atom& a, const Signature& sig) {
    if (a.kind == Atom::Kind::Rel && sig.rel(a.rel).is_function()) return false;
    for (const auto& t : a.args)
        if (!is_rhl(t)) return false;
    return true;
}

bool is_rhl(const Formula& f, const Signature& sig) {
    for (const auto& a : f)
        if (!is_rhl(a, sig)) return false;
    return true;
}

bool is_rhl(const Sequent& s, const Signature& sig) { return is_rhl(s.premise, sig) && is_rhl(s.conclusion, sig); }

bool is_rhl(const Theory& t) {
    for (const auto& s : t.sequents)
        if (!is_rhl(s, *t.sig)) return false;
    return true;
}

bool is_valid_phl(const Formula& f, const Signature& sig) {
    for (const auto& a : f)
        if (a.kind == Atom::Kind::Rel && sig.rel(a.rel).is_function()) return false;
    return true;
}

bool is_valid_phl(const Sequent& s, const Signature& sig) {
    return is_valid_phl(s.premise, sig) && is_valid_phl(s.conclusion, sig);
}

namespace {

class Validator {
public:
    explicit Validator(const Signature& sig) : sig_(sig) {}

    void term(const Term& t) {
        if (t.sort >= sig_.sort_count()) throw SignatureError("term has an undeclared sort");
        if (t.is_var()) {
            auto [it, fresh] = sorts_.emplace(t.var, t.sort);
            if (!fresh && it->second != t.sort)
                throw SignatureError("variable '" + t.var + "' is used at two sorts");
            return;
        }
        if (*t.func >= sig_.relation_count()) throw SignatureError("unknown function symbol");
        const auto& f = sig_.rel(*t.func);
        if (!f.is_function()) throw SignatureError("'" + f.name + "' is not a function symbol");
        const auto args = f.arguments();
        if (args.size() != t.args.size()) throw SignatureError("wrong number of arguments to '" + f.name + "'");
        if (t.sort != f.result()) throw SignatureError("wrong result sort for '" + f.name + "'");
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (t.args[i].sort != args[i]) throw SignatureError("argument sort mismatch for '" + f.name + "'");
            term(t.args[i]);
        }
    }

    void atom(const Atom& a) {
        switch (a.kind) {
            case Atom::Kind::Rel: {
                if (a.rel >= sig_.relation_count()) throw SignatureError("unknown relation symbol");
                const auto& r = sig_.rel(a.rel);
                if (r.arity.size() != a.args.size())
                    throw SignatureError("wrong number of arguments to '" + r.name + "'");
                for (std::size_t i = 0; i < a.args.size(); ++i)
                    if (a.args[i].sort != r.arity[i]) throw SignatureError("argument sort mismatch for '" + r.name + "'");
                break;
            }
            case Atom::Kind::Defined:
                if (a.args.size() != 1) throw SignatureError("definedness atom takes one term");
                break;
            case Atom::Kind::Equal:
                if (a.args.size() != 2) throw SignatureError("equality atom takes two terms");
                if (a.args[0].sort != a.args[1].sort) throw SignatureError("equality between different sorts");
                break;
        }
        for (const auto& t : a.args) term(t);
    }

private:
    const Signature& sig_;
    std::map<std::string, SortId> sorts_;
};

}  // namespace

void validate(const Sequent& s, const Signature& sig) {
    Validator v(sig);
    for (const auto& a : s.premise) v.atom(a);
    for (const auto& a : s.conclusion) v.atom(a);
}

void validate(const Theory& t) {
    for (const auto& s : t.sequents) validate(s, *t.sig);
}

}  // namespace hornlog
