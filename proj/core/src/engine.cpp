#include "hornlog/engine.hpp"

#include <algorithm>
#include <numeric>

#include "hornlog/errors.hpp"

namespace hornlog {

IterationStats EvalReport::totals() const {
    IterationStats t;
    for (const auto& s : per_iteration) {
        t.matches_found += s.matches_found;
        t.matches_fired += s.matches_fired;
        t.tuples_added += s.tuples_added;
        t.merges += s.merges;
        t.elements_created += s.elements_created;
    }
    return t;
}

BudgetExhausted::BudgetExhausted(Structure partial, EvalReport report)
    : std::runtime_error("no fixed point after " + std::to_string(report.iterations()) + " iterations"),
      partial_(std::move(partial)),
      report_(std::move(report)) {}

bool all_surjective(const Theory& t) {
    for (const auto& s : t.sequents)
        if (!conclusion_only_variables(s).empty()) return false;
    return true;
}

namespace {

Delta empty_delta(const Signature& sig) {
    Delta d;
    d.tuples.resize(sig.relation_count());
    d.elements.resize(sig.sort_count());
    return d;
}

/// Applies one round's worth of conclusions to a live structure.
class Applier {
public:
    Applier(Structure& y, IterationStats& stats, Delta& delta) : y_(y), stats_(stats), delta_(delta) {}

    /// Realizes the pushout of [S] along the match: conclusion-only variables
    /// are grouped by the conclusion's equalities and each group not equated
    /// with a premise variable becomes one fresh element.
    void fire(const CompiledQuery& q, std::vector<std::uint32_t> values) {
        const auto n = q.variables.size();
        values.resize(n, 0);
        std::vector<std::uint32_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0u);
        auto root = [&](std::uint32_t v) {
            while (parent[v] != v) v = parent[v];
            return v;
        };
        for (const auto& a : q.conclusion) {
            if (a.kind != Atom::Kind::Equal) continue;
            auto l = root(a.vars[0]), r = root(a.vars[1]);
            if (l != r) parent[std::max(l, r)] = std::min(l, r);
        }
        // Roots are the smallest member of their class, so a class contains a
        // premise variable iff its root is one.
        for (std::uint32_t v = 0; v < q.premise_vars; ++v) {
            const auto r = root(v);
            if (r == v) continue;
            merge(q.variables[v].sort, values[r], values[v]);
        }
        for (std::uint32_t v = static_cast<std::uint32_t>(q.premise_vars); v < n; ++v) {
            const auto r = root(v);
            if (r != v) continue;
            const auto s = q.variables[v].sort;
            values[v] = y_.add_element(s).index;
            delta_.elements[s].insert(values[v]);
            ++stats_.elements_created;
        }
        for (std::uint32_t v = 0; v < n; ++v) values[v] = y_.find(q.variables[v].sort, values[root(v)]);
        for (const auto& a : q.conclusion) {
            if (a.kind != Atom::Kind::Rel) continue;
            Tuple t;
            t.reserve(a.vars.size());
            for (auto v : a.vars) t.push_back(values[v]);
            if (y_.add_tuple(a.rel, t)) {
                ++stats_.tuples_added;
                delta_.tuples[a.rel].insert(std::move(t));
            }
        }
    }

private:
    void merge(SortId s, std::uint32_t a, std::uint32_t b) {
        if (y_.find(s, a) == y_.find(s, b)) return;
        rewritten_.clear();
        y_.merge(ElementId{s, a}, ElementId{s, b}, &rewritten_);
        ++stats_.merges;
        for (auto& rt : rewritten_) delta_.tuples[rt.rel].insert(std::move(rt.tuple));
    }

    Structure& y_;
    IterationStats& stats_;
    Delta& delta_;
    std::vector<RewrittenTuple> rewritten_;
};

/// Keeps only delta items that are still present in canonical form.
void settle(Delta& d, const Structure& y) {
    for (RelId r = 0; r < d.tuples.size(); ++r) {
        std::set<Tuple> kept;
        for (const auto& t : d.tuples[r]) {
            auto c = y.canonical(r, t);
            if (y.tuples(r).count(c)) kept.insert(std::move(c));
        }
        d.tuples[r] = std::move(kept);
    }
    for (SortId s = 0; s < d.elements.size(); ++s) {
        std::set<std::uint32_t> kept;
        for (auto e : d.elements[s]) kept.insert(y.find(s, e));
        d.elements[s] = std::move(kept);
    }
}

}  // namespace

EvalResult evaluate(const Theory& t, const StructurePtr& x, const EvalConfig& cfg) {
    if (!is_rhl(t)) throw PreconditionError("evaluation needs a relational theory; flatten it first");
    if (!t.sig->same_shape(x->signature()))
        throw SignatureError("theory and structure are over different signatures");
    if (cfg.max_iterations && *cfg.max_iterations == 0)
        throw std::invalid_argument("max_iterations must be at least 1");

    std::vector<CompiledQuery> queries;
    for (const auto& s : t.sequents) queries.push_back(compile(s));

    EvalReport report;
    const bool surjective = all_surjective(t);
    if (!surjective && !cfg.epic_origin) {
        const std::string msg =
            "theory has rules with conclusion-only variables; the result is weakly free and may not terminate";
        if (cfg.strictness == Strictness::Error) throw PreconditionError(msg);
        report.warnings.push_back(msg);
    }
    std::optional<std::size_t> budget = cfg.max_iterations;
    if (!budget && !surjective) budget = 10000;

    Structure y = *x;
    std::optional<Delta> delta;
    std::vector<Match> matches;
    for (;;) {
        if (budget && report.iterations() == *budget) throw BudgetExhausted(std::move(y), std::move(report));
        IterationStats stats;
        matches.clear();
        for (std::size_t i = 0; i < queries.size(); ++i) {
            auto found = find_matches(queries[i], y, delta ? &*delta : nullptr);
            for (auto& m : found) {
                m.sequent = i;
                matches.push_back(std::move(m));
            }
        }
        std::sort(matches.begin(), matches.end());
        matches.erase(std::unique(matches.begin(), matches.end()), matches.end());
        // Rules without fresh variables go first, so merges they cause are
        // seen by the extension test of rules that would invent elements.
        std::stable_partition(matches.begin(), matches.end(), [&](const Match& m) {
            return queries[m.sequent].variables.size() == queries[m.sequent].premise_vars;
        });
        stats.matches_found = matches.size();

        Delta next = empty_delta(y.signature());
        Applier apply(y, stats, next);
        for (auto& m : matches) {
            const auto& q = queries[m.sequent];
            for (std::size_t v = 0; v < m.values.size(); ++v) m.values[v] = y.find(q.variables[v].sort, m.values[v]);
            if (extends(q, y, m.values)) continue;
            ++stats.matches_fired;
            apply.fire(q, m.values);
        }
        report.per_iteration.push_back(stats);
        if (!stats.changed()) {
            report.fixed_point = true;
            break;
        }
        if (cfg.strategy == Strategy::Seminaive) {
            settle(next, y);
            delta = std::move(next);
        }
    }

    auto model = share(std::move(y));
    std::vector<std::vector<std::uint32_t>> m(model->signature().sort_count());
    for (SortId s = 0; s < m.size(); ++s) {
        m[s].resize(x->element_count(s));
        for (std::uint32_t i = 0; i < m[s].size(); ++i) m[s][i] = model->find(s, i);
    }
    return EvalResult{model, Morphism{x, model, std::move(m)}, std::move(report)};
}

EvalResult evaluate(const Theory& t, const Structure& x, const EvalConfig& cfg) {
    return evaluate(t, share(x), cfg);
}

std::optional<Match> first_counterexample(const Structure& x, const Sequent& s) {
    const auto q = compile(s);
    for (auto& m : find_matches(q, x))
        if (!extends(q, x, m.values)) return m;
    return std::nullopt;
}

bool satisfies(const Structure& x, const Sequent& s) { return !first_counterexample(x, s).has_value(); }

bool satisfies(const Structure& x, const Theory& t) {
    for (const auto& s : t.sequents)
        if (!satisfies(x, s)) return false;
    return true;
}

}  // namespace hornlog
