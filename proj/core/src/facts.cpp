#include "hornlog/facts.hpp"

#include <map>
#include <set>
#include <sstream>

#include "hornlog/lexer.hpp"

namespace hornlog {

namespace {

class FactsParser {
public:
    FactsParser(std::string_view text, SignaturePtr sig) : ts_(tokenize(text)), x_(sig), names_(sig->sort_count()) {}

    Structure run() {
        while (!ts_.at(TokenKind::End)) {
            if (ts_.at_keyword("sort") && ts_.at(TokenKind::Ident, 1)) {
                sort_decl();
            } else if (ts_.at_keyword("merged") && ts_.at(TokenKind::Colon, 1)) {
                ts_.next();
                ts_.next();
                while (!ts_.at(TokenKind::End)) alias();
            } else {
                fact();
            }
        }
        return std::move(x_);
    }

private:
    const Signature& sig() const { return x_.signature(); }

    void sort_decl() {
        ts_.next();
        const auto& name = ts_.expect_ident();
        const auto s = sig().find_sort(name.text);
        if (!s) throw ParseError(name.loc, "unknown sort '" + name.text + "'");
        ts_.expect(TokenKind::Colon);
        while (ts_.at(TokenKind::Ident)) {
            const auto& el = ts_.next();
            if (names_[*s].count(el.text))
                throw ParseError(el.loc, "element '" + el.text + "' is declared twice in sort '" + name.text + "'");
            names_[*s].emplace(el.text, x_.add_element(*s, el.text));
        }
        ts_.expect(TokenKind::Semi);
    }

    ElementId element(const Token& t, SortId s) const {
        auto it = names_[s].find(t.text);
        if (it == names_[s].end())
            throw ParseError(t.loc, "no element '" + t.text + "' in sort '" + sig().sort_name(s) + "'");
        return it->second;
    }

    ElementId element_any_sort(const Token& t) const {
        std::optional<ElementId> found;
        for (SortId s = 0; s < names_.size(); ++s) {
            auto it = names_[s].find(t.text);
            if (it == names_[s].end()) continue;
            if (found) throw ParseError(t.loc, "element name '" + t.text + "' is ambiguous between sorts");
            found = it->second;
        }
        if (!found) throw ParseError(t.loc, "unknown element '" + t.text + "'");
        return *found;
    }

    void fact() {
        const auto& head = ts_.expect_ident();
        if (ts_.accept(TokenKind::Equal)) {
            const auto a = element_any_sort(head);
            const auto& rhs = ts_.expect_ident();
            const auto b = element(rhs, a.sort);
            x_.merge(a, b);
            ts_.expect(TokenKind::Semi);
            return;
        }
        const auto r = sig().find_relation(head.text);
        if (!r) throw ParseError(head.loc, "unknown relation '" + head.text + "'");
        const auto& rel = sig().rel(*r);
        ts_.expect(TokenKind::LParen);
        std::vector<Token> args;
        if (!ts_.at(TokenKind::RParen)) {
            args.push_back(ts_.expect_ident());
            while (ts_.accept(TokenKind::Comma)) args.push_back(ts_.expect_ident());
        }
        ts_.expect(TokenKind::RParen);
        if (ts_.accept(TokenKind::Equal)) {
            if (!rel.is_function()) throw ParseError(head.loc, "'" + head.text + "' is not a function symbol");
            args.push_back(ts_.expect_ident());
        }
        if (args.size() != rel.arity.size())
            throw ParseError(head.loc, "'" + head.text + "' expects " + std::to_string(rel.arity.size()) +
                                           " elements, got " + std::to_string(args.size()));
        std::vector<ElementId> tuple;
        for (std::size_t i = 0; i < args.size(); ++i) tuple.push_back(element(args[i], rel.arity[i]));
        x_.add_tuple(*r, tuple);
        ts_.expect(TokenKind::Semi);
    }

    void alias() {
        const auto& loser = ts_.expect_ident();
        ts_.expect(TokenKind::Arrow);
        const auto& survivor = ts_.expect_ident();
        ts_.expect(TokenKind::Semi);
        const auto target = element_any_sort(survivor);
        if (names_[target.sort].count(loser.text))
            throw ParseError(loser.loc, "alias '" + loser.text + "' clashes with an element name");
        const auto e = x_.add_element(target.sort, loser.text);
        names_[target.sort].emplace(loser.text, e);
        x_.merge(target, e);
    }

    TokenStream ts_;
    Structure x_;
    std::vector<std::map<std::string, ElementId>> names_;
};

}  // namespace

Structure parse_facts(std::string_view text, SignaturePtr sig) { return FactsParser(text, std::move(sig)).run(); }

std::vector<std::vector<std::string>> display_names(const Structure& x) {
    const auto& sig = x.signature();
    std::vector<std::vector<std::string>> out(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        std::set<std::string> taken;
        for (std::uint32_t i = 0; i < x.element_count(s); ++i)
            if (!x.name({s, i}).empty()) taken.insert(x.name({s, i}));
        out[s].resize(x.element_count(s));
        std::size_t k = 0;
        for (auto i : x.canonical_elements(s)) {
            if (!x.name({s, i}).empty()) {
                out[s][i] = x.name({s, i});
                continue;
            }
            std::string name;
            do name = "_" + sig.sort_name(s) + "#" + std::to_string(k++);
            while (taken.count(name));
            out[s][i] = name;
        }
        for (std::uint32_t i = 0; i < x.element_count(s); ++i) {
            if (x.find(s, i) == i) continue;
            out[s][i] = x.name({s, i}).empty() ? out[s][x.find(s, i)] : x.name({s, i});
        }
    }
    return out;
}

std::vector<MergedName> merged_names(const Structure& x, const std::vector<std::vector<std::string>>& names) {
    std::vector<MergedName> out;
    for (SortId s = 0; s < names.size(); ++s)
        for (std::uint32_t i = 0; i < x.element_count(s); ++i)
            if (x.find(s, i) != i && !x.name({s, i}).empty())
                out.push_back(MergedName{s, x.name({s, i}), names[s][x.find(s, i)]});
    return out;
}

std::string write_facts(const Structure& x, const Signature& display) {
    if (!display.same_shape(x.signature())) throw SignatureError("write_facts: signature shape mismatch");
    const auto names = display_names(x);
    std::ostringstream os;
    for (SortId s = 0; s < display.sort_count(); ++s) {
        os << "sort " << display.sort_name(s) << ':';
        for (auto i : x.canonical_elements(s)) os << ' ' << names[s][i];
        os << ";\n";
    }
    for (RelId r = 0; r < display.relation_count(); ++r) {
        const auto& rel = display.rel(r);
        for (const auto& t : x.tuples(r)) {
            const auto n = rel.is_function() ? t.size() - 1 : t.size();
            os << rel.name << '(';
            for (std::size_t i = 0; i < n; ++i) os << (i ? ", " : "") << names[rel.arity[i]][t[i]];
            os << ')';
            if (rel.is_function()) os << " = " << names[rel.result()][t.back()];
            os << ";\n";
        }
    }
    const auto merged = merged_names(x, names);
    if (!merged.empty()) {
        os << "merged:\n";
        for (const auto& m : merged) os << "  " << m.loser << " -> " << m.survivor << ";\n";
    }
    return os.str();
}

std::string write_facts(const Structure& x) { return write_facts(x, x.signature()); }

}  // namespace hornlog
