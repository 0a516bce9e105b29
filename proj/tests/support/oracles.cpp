#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace hornlog::testing {

std::set<Edge> transitive_closure(std::size_t n, const std::set<Edge>& edges) {
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (auto [a, b] : edges) reach[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    std::set<Edge> out;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            if (reach[i][j]) out.emplace(i, j);
    return out;
}

namespace {

class Evaluator {
public:
    explicit Evaluator(const Structure& x) : x_(x) {
        const auto& sig = x.signature();
        tables_.resize(sig.relation_count());
        for (RelId r = 0; r < sig.relation_count(); ++r) {
            if (!sig.rel(r).is_function()) continue;
            for (const auto& t : x.tuples(r)) tables_[r].emplace(Tuple(t.begin(), t.end() - 1), t.back());
        }
    }

    std::optional<std::uint32_t> term(const Term& t, const std::map<std::string, std::uint32_t>& env) const {
        if (t.is_var()) return env.at(t.var);
        Tuple args;
        for (const auto& a : t.args) {
            auto v = term(a, env);
            if (!v) return std::nullopt;
            args.push_back(*v);
        }
        auto it = tables_[*t.func].find(args);
        if (it == tables_[*t.func].end()) return std::nullopt;
        return it->second;
    }

    bool atom(const Atom& a, const std::map<std::string, std::uint32_t>& env) const {
        std::vector<std::uint32_t> vals;
        for (const auto& t : a.args) {
            auto v = term(t, env);
            if (!v) return false;
            vals.push_back(x_.find(t.sort, *v));
        }
        switch (a.kind) {
            case Atom::Kind::Rel: return x_.tuples(a.rel).count(vals) > 0;
            case Atom::Kind::Defined: return true;
            case Atom::Kind::Equal: return vals[0] == vals[1];
        }
        return false;
    }

    bool formula(const Formula& f, const std::map<std::string, std::uint32_t>& env) const {
        return std::all_of(f.begin(), f.end(), [&](const Atom& a) { return atom(a, env); });
    }

    /// Tries every assignment of `vars` on top of env; stops when visit
    /// returns true and reports whether it did.
    template <class F>
    bool any_assignment(const std::vector<Variable>& vars, std::size_t k, std::map<std::string, std::uint32_t>& env,
                        F&& visit) const {
        if (k == vars.size()) return visit(env);
        for (auto e : x_.canonical_elements(vars[k].sort)) {
            env[vars[k].name] = e;
            if (any_assignment(vars, k + 1, env, visit)) return true;
        }
        env.erase(vars[k].name);
        return false;
    }

private:
    const Structure& x_;
    std::vector<std::map<Tuple, std::uint32_t>> tables_;
};

}  // namespace

bool oracle_satisfies(const Structure& x, const Sequent& s) {
    Evaluator ev(x);
    const auto premise_vars = variables(s.premise);
    const auto fresh_vars = conclusion_only_variables(s);
    std::map<std::string, std::uint32_t> env;
    const bool violated = ev.any_assignment(premise_vars, 0, env, [&](std::map<std::string, std::uint32_t>& e) {
        if (!ev.formula(s.premise, e)) return false;
        auto inner = e;
        const bool extends = ev.any_assignment(fresh_vars, 0, inner, [&](std::map<std::string, std::uint32_t>& full) {
            return ev.formula(s.conclusion, full);
        });
        return !extends;
    });
    return !violated;
}

bool oracle_satisfies(const Structure& x, const Theory& t) {
    return std::all_of(t.sequents.begin(), t.sequents.end(), [&](const Sequent& s) { return oracle_satisfies(x, s); });
}

std::size_t oracle_count_morphisms(const Structure& a, const Structure& b) {
    const auto& sig = a.signature();
    std::vector<std::pair<SortId, std::uint32_t>> slots;
    for (SortId s = 0; s < sig.sort_count(); ++s)
        for (auto e : a.canonical_elements(s)) slots.emplace_back(s, e);
    std::vector<std::vector<std::uint32_t>> targets(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) targets[s] = b.canonical_elements(s);
    for (const auto& [s, e] : slots)
        if (targets[s].empty()) return 0;

    std::vector<std::size_t> pos(slots.size(), 0);
    std::vector<std::vector<std::uint32_t>> map(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) map[s].assign(a.element_count(s), 0);
    std::size_t count = 0;
    for (;;) {
        for (std::size_t k = 0; k < slots.size(); ++k) map[slots[k].first][slots[k].second] = targets[slots[k].first][pos[k]];
        bool ok = true;
        for (RelId r = 0; r < sig.relation_count() && ok; ++r) {
            const auto& arity = sig.rel(r).arity;
            for (const auto& t : a.tuples(r)) {
                Tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = map[arity[i]][a.find(arity[i], t[i])];
                if (!b.contains(r, img)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) ++count;
        std::size_t k = 0;
        while (k < pos.size() && ++pos[k] == targets[slots[k].first].size()) pos[k++] = 0;
        if (k == pos.size()) return count;
    }
}

namespace {

/// Calls visit for every vector v with 0 <= v[i] < bound[i].
template <class F>
void odometer(const std::vector<std::size_t>& bound, F&& visit) {
    for (auto b : bound)
        if (b == 0) return;
    std::vector<std::size_t> v(bound.size(), 0);
    for (;;) {
        visit(v);
        std::size_t i = 0;
        while (i < v.size() && ++v[i] == bound[i]) v[i++] = 0;
        if (i == v.size()) return;
    }
}

std::vector<Tuple> all_tuples(const std::vector<std::size_t>& sizes, std::span<const SortId> sorts) {
    std::vector<std::size_t> bound;
    for (auto s : sorts) bound.push_back(sizes[s]);
    std::vector<Tuple> out;
    odometer(bound, [&](const std::vector<std::size_t>& v) { out.emplace_back(v.begin(), v.end()); });
    return out;
}

Structure with_carriers(SignaturePtr sig, const std::vector<std::size_t>& sizes) {
    Structure x(std::move(sig));
    for (SortId s = 0; s < sizes.size(); ++s)
        for (std::size_t i = 0; i < sizes[s]; ++i) x.add_element(s);
    return x;
}

}  // namespace

void enumerate_structures(SignaturePtr sig, std::size_t max_per_sort, const StructureVisitor& visit) {
    odometer(std::vector<std::size_t>(sig->sort_count(), max_per_sort + 1), [&](const std::vector<std::size_t>& sizes) {
        std::vector<std::pair<RelId, Tuple>> candidates;
        for (RelId r = 0; r < sig->relation_count(); ++r)
            for (auto& t : all_tuples(sizes, sig->rel(r).arity)) candidates.emplace_back(r, std::move(t));
        const auto base = with_carriers(sig, sizes);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
            Structure x = base;
            for (std::size_t k = 0; k < candidates.size(); ++k)
                if (mask >> k & 1) x.add_tuple(candidates[k].first, candidates[k].second);
            visit(x);
        }
    });
}

void enumerate_algebras(SignaturePtr sig, std::size_t max_per_sort, const StructureVisitor& visit) {
    odometer(std::vector<std::size_t>(sig->sort_count(), max_per_sort + 1), [&](const std::vector<std::size_t>& sizes) {
        std::vector<std::pair<RelId, Tuple>> predicate_tuples;
        // One digit per (function, argument tuple): 0 undefined, k+1 result k.
        std::vector<std::pair<RelId, Tuple>> cells;
        std::vector<std::size_t> digits;
        for (RelId r = 0; r < sig->relation_count(); ++r) {
            const auto& rel = sig->rel(r);
            if (!rel.is_function()) {
                for (auto& t : all_tuples(sizes, rel.arity)) predicate_tuples.emplace_back(r, std::move(t));
                continue;
            }
            for (auto& t : all_tuples(sizes, rel.arguments())) {
                cells.emplace_back(r, std::move(t));
                digits.push_back(sizes[rel.result()] + 1);
            }
        }
        const auto base = with_carriers(sig, sizes);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << predicate_tuples.size()); ++mask) {
            Structure preds = base;
            for (std::size_t k = 0; k < predicate_tuples.size(); ++k)
                if (mask >> k & 1) preds.add_tuple(predicate_tuples[k].first, predicate_tuples[k].second);
            if (cells.empty()) {
                visit(preds);
                continue;
            }
            odometer(digits, [&](const std::vector<std::size_t>& choice) {
                Structure x = preds;
                for (std::size_t k = 0; k < cells.size(); ++k) {
                    if (choice[k] == 0) continue;
                    Tuple t = cells[k].second;
                    t.push_back(static_cast<std::uint32_t>(choice[k] - 1));
                    x.add_tuple(cells[k].first, std::move(t));
                }
                visit(x);
            });
        }
    });
}

namespace {

using Encoding = std::vector<std::vector<Tuple>>;

Encoding encode(const Structure& x, const std::vector<std::vector<std::uint32_t>>& perm) {
    const auto& sig = x.signature();
    Encoding out(sig.relation_count());
    for (RelId r = 0; r < sig.relation_count(); ++r) {
        const auto& arity = sig.rel(r).arity;
        for (const auto& t : x.tuples(r)) {
            Tuple img(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm[arity[i]][t[i]];
            out[r].push_back(std::move(img));
        }
        std::sort(out[r].begin(), out[r].end());
    }
    return out;
}

bool smaller_relabeling(const Structure& x, std::vector<std::vector<std::uint32_t>>& perm, SortId s,
                        const Encoding& identity) {
    if (s == perm.size()) return encode(x, perm) < identity;
    do {
        if (smaller_relabeling(x, perm, s + 1, identity)) return true;
    } while (std::next_permutation(perm[s].begin(), perm[s].end()));
    return false;
}

}  // namespace

bool is_canonical_labeling(const Structure& x) {
    const auto& sig = x.signature();
    std::vector<std::vector<std::uint32_t>> perm(sig.sort_count());
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        perm[s].resize(x.element_count(s));
        std::iota(perm[s].begin(), perm[s].end(), 0u);
    }
    const auto identity = encode(x, perm);
    return !smaller_relabeling(x, perm, 0, identity);
}

}  // namespace hornlog::testing
