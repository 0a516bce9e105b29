#include "hornlog/parser.hpp"

#include <map>
#include <memory>
#include <optional>

namespace hornlog {

namespace {

struct RawTerm {
    std::string name;
    SourceLoc loc;
    bool app = false;
    std::vector<RawTerm> args;
    std::optional<SortId> annotation;
    SourceLoc annotation_loc;
};

struct RawAtom {
    Atom::Kind kind = Atom::Kind::Rel;
    std::string rel;
    std::vector<RawTerm> args;
    SourceLoc loc;
};

using RawFormula = std::vector<RawAtom>;

/// Unifies variable sorts within one sequent, then builds resolved terms.
class SortInference {
public:
    explicit SortInference(const Signature& sig) : sig_(sig) {}

    void atom(const RawAtom& a) {
        switch (a.kind) {
            case Atom::Kind::Rel: {
                const auto r = sig_.find_relation(a.rel);
                if (!r) throw ParseError(a.loc, "unknown relation symbol '" + a.rel + "'");
                const auto& rel = sig_.rel(*r);
                if (rel.is_function())
                    throw ParseError(a.loc, "function symbol '" + a.rel + "' cannot be used as a relation atom");
                if (rel.arity.size() != a.args.size())
                    throw ParseError(a.loc, "'" + a.rel + "' expects " + std::to_string(rel.arity.size()) +
                                                " arguments, got " + std::to_string(a.args.size()));
                for (std::size_t i = 0; i < a.args.size(); ++i) expect(a.args[i], rel.arity[i]);
                break;
            }
            case Atom::Kind::Defined:
                walk(a.args[0]);
                break;
            case Atom::Kind::Equal: {
                const auto& l = a.args[0];
                const auto& r = a.args[1];
                walk(l);
                walk(r);
                if (!l.app && !r.app) {
                    unite(var_id(l), var_id(r), a.loc);
                } else if (!l.app) {
                    expect(l, result_sort(r));
                } else if (!r.app) {
                    expect(r, result_sort(l));
                } else if (result_sort(l) != result_sort(r)) {
                    throw ParseError(a.loc, "equality between terms of sorts '" + sig_.sort_name(result_sort(l)) +
                                                "' and '" + sig_.sort_name(result_sort(r)) + "'");
                }
                break;
            }
        }
    }

    /// Throws if some variable's sort is still unknown.
    void finish() const {
        for (std::size_t v = 0; v < parent_.size(); ++v)
            if (!sort_[root(v)]) throw ParseError(first_[v], "cannot infer the sort of variable '" + names_[v] + "'");
    }

    Term resolve(const RawTerm& t) const {
        if (!t.app) return Term::variable(t.name, *sort_[root(ids_.at(t.name))]);
        std::vector<Term> args;
        for (const auto& a : t.args) args.push_back(resolve(a));
        return Term::apply(sig_, *sig_.find_relation(t.name), std::move(args));
    }

    Atom resolve(const RawAtom& a) const {
        std::vector<Term> args;
        for (const auto& t : a.args) args.push_back(resolve(t));
        switch (a.kind) {
            case Atom::Kind::Rel: return Atom::relation(*sig_.find_relation(a.rel), std::move(args));
            case Atom::Kind::Defined: return Atom::defined(std::move(args[0]));
            case Atom::Kind::Equal: return Atom::equal(std::move(args[0]), std::move(args[1]));
        }
        return {};
    }

    Formula resolve(const RawFormula& f) const {
        Formula out;
        for (const auto& a : f) out.push_back(resolve(a));
        return out;
    }

private:
    std::size_t root(std::size_t v) const {
        while (parent_[v] != v) v = parent_[v];
        return v;
    }

    std::size_t var_id(const RawTerm& t) {
        auto [it, fresh] = ids_.emplace(t.name, parent_.size());
        if (fresh) {
            parent_.push_back(parent_.size());
            sort_.emplace_back();
            first_.push_back(t.loc);
            names_.push_back(t.name);
        }
        if (t.annotation) constrain(it->second, *t.annotation, t.annotation_loc);
        return it->second;
    }

    void constrain(std::size_t v, SortId s, SourceLoc loc) {
        auto& slot = sort_[root(v)];
        if (slot && *slot != s)
            throw ParseError(loc, "variable '" + names_[v] + "' is used at sorts '" + sig_.sort_name(*slot) + "' and '" +
                                      sig_.sort_name(s) + "'");
        slot = s;
    }

    void unite(std::size_t a, std::size_t b, SourceLoc loc) {
        a = root(a);
        b = root(b);
        if (a == b) return;
        if (sort_[a] && sort_[b] && *sort_[a] != *sort_[b])
            throw ParseError(loc, "variables '" + names_[a] + "' and '" + names_[b] + "' have different sorts");
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        if (!sort_[a]) sort_[a] = sort_[b];
    }

    const Relation& function(const RawTerm& t) const {
        const auto f = sig_.find_relation(t.name);
        if (!f) throw ParseError(t.loc, "unknown function symbol '" + t.name + "'");
        const auto& rel = sig_.rel(*f);
        if (!rel.is_function()) throw ParseError(t.loc, "'" + t.name + "' is a predicate, not a function symbol");
        if (rel.arguments().size() != t.args.size())
            throw ParseError(t.loc, "'" + t.name + "' expects " + std::to_string(rel.arguments().size()) +
                                        " arguments, got " + std::to_string(t.args.size()));
        return rel;
    }

    SortId result_sort(const RawTerm& t) const { return function(t).result(); }

    void walk(const RawTerm& t) {
        if (!t.app) {
            var_id(t);
            return;
        }
        if (t.annotation) throw ParseError(t.annotation_loc, "only variables take sort annotations");
        const auto& f = function(t);
        const auto args = f.arguments();
        for (std::size_t i = 0; i < t.args.size(); ++i) expect(t.args[i], args[i]);
    }

    void expect(const RawTerm& t, SortId s) {
        walk(t);
        if (!t.app) {
            constrain(var_id(t), s, t.loc);
        } else if (result_sort(t) != s) {
            throw ParseError(t.loc, "expected a term of sort '" + sig_.sort_name(s) + "', found '" +
                                        sig_.sort_name(result_sort(t)) + "'");
        }
    }

    const Signature& sig_;
    std::map<std::string, std::size_t> ids_;
    std::vector<std::size_t> parent_;
    std::vector<std::optional<SortId>> sort_;
    std::vector<SourceLoc> first_;
    std::vector<std::string> names_;
};

class Parser {
public:
    Parser(std::string_view text, std::shared_ptr<Signature> sig) : ts_(tokenize(text)), sig_(std::move(sig)) {}

    ParsedTheory theory() {
        std::vector<Sequent> sequents;
        while (!ts_.at(TokenKind::End)) {
            if (ts_.at_keyword("sort")) {
                sort_decl();
            } else if (ts_.at_keyword("pred")) {
                pred_decl();
            } else if (ts_.at_keyword("func")) {
                func_decl();
            } else if (ts_.at_keyword("rule")) {
                ts_.next();
                sequents.push_back(sequent());
                ts_.expect(TokenKind::Semi);
            } else {
                ts_.fail("expected 'sort', 'pred', 'func' or 'rule'");
            }
        }
        return ParsedTheory{Theory{sig_, std::move(sequents)}, std::move(warnings_)};
    }

    Sequent lone_sequent() {
        if (ts_.at_keyword("rule") && !ts_.at(TokenKind::LParen, 1) && !ts_.at(TokenKind::Bang, 1) &&
            !ts_.at(TokenKind::Equal, 1) && !ts_.at(TokenKind::Colon, 1))
            ts_.next();
        auto s = sequent();
        ts_.accept(TokenKind::Semi);
        ts_.expect(TokenKind::End);
        return s;
    }

    Formula lone_formula() {
        auto raw = formula();
        ts_.expect(TokenKind::End);
        SortInference inf(*sig_);
        for (const auto& a : raw) inf.atom(a);
        inf.finish();
        return inf.resolve(raw);
    }

private:
    SortId sort_ref() {
        const auto& t = ts_.expect_ident();
        auto s = sig_->find_sort(t.text);
        if (!s) throw ParseError(t.loc, "unknown sort '" + t.text + "'");
        return *s;
    }

    template <class F>
    void declare(SourceLoc loc, F&& f) {
        try {
            f();
        } catch (const SignatureError& e) {
            throw ParseError(loc, e.what());
        }
    }

    void sort_decl() {
        ts_.next();
        const auto& name = ts_.expect_ident();
        declare(name.loc, [&] { sig_->add_sort(name.text); });
        ts_.expect(TokenKind::Semi);
    }

    std::vector<SortId> sort_list() {
        std::vector<SortId> out;
        if (!ts_.at(TokenKind::Ident)) return out;
        out.push_back(sort_ref());
        while (ts_.accept(TokenKind::Star)) out.push_back(sort_ref());
        return out;
    }

    void pred_decl() {
        ts_.next();
        const auto& name = ts_.expect_ident();
        ts_.expect(TokenKind::Colon);
        auto arity = sort_list();
        declare(name.loc, [&] { sig_->add_predicate(name.text, std::move(arity)); });
        ts_.expect(TokenKind::Semi);
    }

    void func_decl() {
        ts_.next();
        const auto& name = ts_.expect_ident();
        ts_.expect(TokenKind::Colon);
        auto args = sort_list();
        ts_.expect(TokenKind::Arrow);
        const auto result = sort_ref();
        declare(name.loc, [&] { sig_->add_function(name.text, std::move(args), result); });
        ts_.expect(TokenKind::Semi);
    }

    RawTerm term() {
        const auto& id = ts_.expect_ident();
        RawTerm t{id.text, id.loc, false, {}, std::nullopt, {}};
        if (ts_.accept(TokenKind::LParen)) {
            t.app = true;
            if (!ts_.at(TokenKind::RParen)) {
                t.args.push_back(term());
                while (ts_.accept(TokenKind::Comma)) t.args.push_back(term());
            }
            ts_.expect(TokenKind::RParen);
        } else if (ts_.at(TokenKind::Colon)) {
            t.annotation_loc = ts_.next().loc;
            t.annotation = sort_ref();
        }
        return t;
    }

    RawAtom atom() {
        const auto loc = ts_.peek().loc;
        auto t = term();
        if (ts_.accept(TokenKind::Bang)) return RawAtom{Atom::Kind::Defined, {}, {std::move(t)}, loc};
        if (ts_.accept(TokenKind::Equal)) {
            auto rhs = term();
            return RawAtom{Atom::Kind::Equal, {}, {std::move(t), std::move(rhs)}, loc};
        }
        if (!t.app) throw ParseError(loc, "expected '(', '!' or '=' after '" + t.name + "'");
        if (t.annotation) throw ParseError(t.annotation_loc, "only variables take sort annotations");
        return RawAtom{Atom::Kind::Rel, t.name, std::move(t.args), loc};
    }

    RawFormula formula() {
        RawFormula f;
        if (ts_.at_keyword("true") && (ts_.at(TokenKind::Implies, 1) || ts_.at(TokenKind::Semi, 1) ||
                                       ts_.at(TokenKind::End, 1))) {
            ts_.next();
            return f;
        }
        f.push_back(atom());
        while (ts_.accept(TokenKind::Amp)) f.push_back(atom());
        return f;
    }

    Sequent sequent() {
        const auto loc = ts_.peek().loc;
        auto premise = formula();
        ts_.expect(TokenKind::Implies);
        auto conclusion = formula();
        SortInference inf(*sig_);
        for (const auto& a : premise) inf.atom(a);
        for (const auto& a : conclusion) inf.atom(a);
        inf.finish();
        if (conclusion.empty()) warnings_.push_back(Diagnostic{loc, "rule has an empty conclusion"});
        return Sequent{inf.resolve(premise), inf.resolve(conclusion), loc};
    }

    TokenStream ts_;
    std::shared_ptr<Signature> sig_;
    std::vector<Diagnostic> warnings_;
};

}  // namespace

ParsedTheory parse_theory_with_diagnostics(std::string_view text) {
    Parser p(text, std::make_shared<Signature>());
    return p.theory();
}

Theory parse_theory(std::string_view text) { return parse_theory_with_diagnostics(text).theory; }

Sequent parse_sequent(std::string_view text, const Signature& sig) {
    Parser p(text, std::make_shared<Signature>(sig));
    return p.lone_sequent();
}

Formula parse_formula(std::string_view text, const Signature& sig) {
    Parser p(text, std::make_shared<Signature>(sig));
    return p.lone_formula();
}

}  // namespace hornlog
