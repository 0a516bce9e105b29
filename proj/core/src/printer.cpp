#include "hornlog/printer.hpp"

#include <map>
#include <set>
#include <sstream>

namespace hornlog {

namespace {

/// Mirrors the parser's sort inference on a resolved AST: a variable is
/// inferable when its equality class touches a relation or function argument
/// position, or is equated with an application.
class Annotations {
public:
    explicit Annotations(const std::vector<const Formula*>& parts) {
        for (const auto* f : parts)
            for (const auto& a : *f) scan(a);
        for (const auto& [name, id] : ids_)
            if (!anchored_[root(id)]) pending_.insert(name);
    }

    /// True the first time an unanchored variable is printed.
    bool take(const std::string& name) { return pending_.erase(name) > 0; }

private:
    std::size_t id(const std::string& name) {
        auto [it, fresh] = ids_.emplace(name, parent_.size());
        if (fresh) {
            parent_.push_back(parent_.size());
            anchored_.push_back(false);
        }
        return it->second;
    }

    std::size_t root(std::size_t v) const {
        while (parent_[v] != v) v = parent_[v];
        return v;
    }

    void anchor(const Term& t) {
        if (t.is_var())
            anchored_[root(id(t.var))] = true;
        else
            walk(t);
    }

    void walk(const Term& t) {
        if (t.is_var()) {
            id(t.var);
            return;
        }
        for (const auto& a : t.args) anchor(a);
    }

    void scan(const Atom& a) {
        switch (a.kind) {
            case Atom::Kind::Rel:
                for (const auto& t : a.args) anchor(t);
                break;
            case Atom::Kind::Defined:
                walk(a.args[0]);
                break;
            case Atom::Kind::Equal: {
                const auto& l = a.args[0];
                const auto& r = a.args[1];
                walk(l);
                walk(r);
                if (l.is_var() && r.is_var()) {
                    auto x = root(id(l.var)), y = root(id(r.var));
                    if (x != y) {
                        parent_[y] = x;
                        anchored_[x] = anchored_[x] || anchored_[y];
                    }
                } else {
                    if (l.is_var()) anchored_[root(id(l.var))] = true;
                    if (r.is_var()) anchored_[root(id(r.var))] = true;
                }
                break;
            }
        }
    }

    std::map<std::string, std::size_t> ids_;
    std::vector<std::size_t> parent_;
    std::vector<bool> anchored_;
    std::set<std::string> pending_;
};

void term(std::ostream& os, const Term& t, const Signature& sig, Annotations* ann) {
    if (t.is_var()) {
        os << t.var;
        if (ann && ann->take(t.var)) os << ':' << sig.sort_name(t.sort);
        return;
    }
    os << sig.rel(*t.func).name << '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ", ";
        term(os, t.args[i], sig, ann);
    }
    os << ')';
}

void formula(std::ostream& os, const Formula& f, const Signature& sig, Annotations* ann) {
    if (f.empty()) {
        os << "true";
        return;
    }
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k) os << " & ";
        const auto& a = f[k];
        switch (a.kind) {
            case Atom::Kind::Rel:
                os << sig.rel(a.rel).name << '(';
                for (std::size_t i = 0; i < a.args.size(); ++i) {
                    if (i) os << ", ";
                    term(os, a.args[i], sig, ann);
                }
                os << ')';
                break;
            case Atom::Kind::Defined:
                term(os, a.args[0], sig, ann);
                os << '!';
                break;
            case Atom::Kind::Equal:
                term(os, a.args[0], sig, ann);
                os << " = ";
                term(os, a.args[1], sig, ann);
                break;
        }
    }
}

void sort_list(std::ostream& os, std::span<const SortId> sorts, const Signature& sig) {
    for (std::size_t i = 0; i < sorts.size(); ++i) {
        if (i) os << " * ";
        os << sig.sort_name(sorts[i]);
    }
}

}  // namespace

std::string print_signature(const Signature& sig) {
    std::ostringstream os;
    for (const auto& s : sig.sorts()) os << "sort " << s << ";\n";
    for (const auto& r : sig.relations()) {
        if (r.is_function()) {
            os << "func " << r.name << ": ";
            sort_list(os, r.arguments(), sig);
            if (!r.arguments().empty()) os << ' ';
            os << "-> " << sig.sort_name(r.result()) << ";\n";
        } else {
            os << "pred " << r.name << ": ";
            sort_list(os, r.arity, sig);
            os << ";\n";
        }
    }
    return os.str();
}

std::string print_term(const Term& t, const Signature& sig) {
    std::ostringstream os;
    term(os, t, sig, nullptr);
    return os.str();
}

std::string print_formula(const Formula& f, const Signature& sig) {
    std::ostringstream os;
    Annotations ann({&f});
    formula(os, f, sig, &ann);
    return os.str();
}

std::string print_sequent(const Sequent& s, const Signature& sig) {
    std::ostringstream os;
    Annotations ann({&s.premise, &s.conclusion});
    formula(os, s.premise, sig, &ann);
    os << " => ";
    formula(os, s.conclusion, sig, &ann);
    return os.str();
}

std::string print_theory(const Theory& t) {
    std::ostringstream os;
    os << print_signature(*t.sig);
    for (const auto& s : t.sequents) os << "rule " << print_sequent(s, *t.sig) << ";\n";
    return os.str();
}

}  // namespace hornlog
