#include "hornlog/match.hpp"

#include <map>
#include <memory>
#include <unordered_map>

#include "hornlog/errors.hpp"

namespace hornlog {

namespace {

class VarTable {
public:
    std::uint32_t intern(const Term& t, CompiledQuery& q) {
        if (!t.is_var()) throw PreconditionError("expected a relational formula; found a composite term");
        auto [it, fresh] = ids_.emplace(t.var, static_cast<std::uint32_t>(q.variables.size()));
        if (fresh) q.variables.push_back(Variable{t.var, t.sort});
        return it->second;
    }

    void atoms(const Formula& f, std::vector<CompiledAtom>& out, CompiledQuery& q) {
        for (const auto& a : f) {
            CompiledAtom c{a.kind, a.rel, {}};
            for (const auto& t : a.args) c.vars.push_back(intern(t, q));
            out.push_back(std::move(c));
        }
    }

private:
    std::map<std::string, std::uint32_t> ids_;
};

}  // namespace

CompiledQuery compile(const Sequent& s) {
    CompiledQuery q;
    VarTable vars;
    vars.atoms(s.premise, q.premise, q);
    q.premise_vars = q.variables.size();
    vars.atoms(s.conclusion, q.conclusion, q);
    return q;
}

CompiledQuery compile(const Formula& premise) { return compile(Sequent{premise, {}, {}}); }

Delta Delta::everything(const Structure& x) {
    const auto& sig = x.signature();
    Delta d;
    d.tuples.resize(sig.relation_count());
    d.elements.resize(sig.sort_count());
    for (RelId r = 0; r < sig.relation_count(); ++r) d.tuples[r] = x.tuples(r);
    for (SortId s = 0; s < sig.sort_count(); ++s) {
        auto els = x.canonical_elements(s);
        d.elements[s].insert(els.begin(), els.end());
    }
    return d;
}

bool Delta::empty() const {
    for (const auto& t : tuples)
        if (!t.empty()) return false;
    for (const auto& e : elements)
        if (!e.empty()) return false;
    return true;
}

namespace {

enum class Phase { Any, Old, New };

/// Pattern entry for an unbound position.
constexpr std::int64_t kFree = -1;

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept {
        std::size_t h = t.size();
        for (auto v : t) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/// Read-only view of a structure for one matching pass, with lazily built
/// hash indices per (relation, bound-position mask) and delta flags.
class Snapshot {
public:
    Snapshot(const Structure& x, const Delta* delta) : x_(x), rels_(x.signature().relation_count()) {
        const auto& sig = x.signature();
        for (RelId r = 0; r < sig.relation_count(); ++r) {
            auto& rel = rels_[r];
            for (const auto& t : x.tuples(r)) {
                rel.all.push_back(&t);
                const bool fresh = delta && r < delta->tuples.size() && delta->tuples[r].count(t);
                if (fresh) rel.fresh.push_back(static_cast<std::uint32_t>(rel.all.size() - 1));
                rel.is_new.push_back(fresh);
            }
        }
        elements_.resize(sig.sort_count());
        new_elements_.resize(sig.sort_count());
        for (SortId s = 0; s < sig.sort_count(); ++s) {
            elements_[s] = x.canonical_elements(s);
            new_elements_[s].assign(x.element_count(s), false);
            if (delta && s < delta->elements.size())
                for (auto e : delta->elements[s])
                    if (e < x.element_count(s) && x.find(s, e) == e) new_elements_[s][e] = true;
        }
    }

    template <class F>
    void tuples(RelId r, const std::vector<std::int64_t>& pattern, Phase phase, F&& visit) {
        auto& rel = rels_[r];
        if (phase == Phase::New) {
            for (auto id : rel.fresh)
                if (fits(*rel.all[id], pattern) && !visit(*rel.all[id])) return;
            return;
        }
        std::uint64_t mask = 0;
        Tuple key;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (pattern[i] != kFree) {
                mask |= std::uint64_t{1} << i;
                key.push_back(static_cast<std::uint32_t>(pattern[i]));
            }
        }
        auto visit_id = [&](std::uint32_t id) {
            if (phase == Phase::Old && rel.is_new[id]) return true;
            return visit(*rel.all[id]);
        };
        if (mask == 0) {
            for (std::uint32_t id = 0; id < rel.all.size(); ++id)
                if (!visit_id(id)) return;
            return;
        }
        const auto& index = index_for(r, mask);
        auto it = index.find(key);
        if (it == index.end()) return;
        for (auto id : it->second)
            if (!visit_id(id)) return;
    }

    template <class F>
    void elements(SortId s, Phase phase, F&& visit) {
        for (auto e : elements_[s])
            if (element_in(s, e, phase) && !visit(e)) return;
    }

    bool element_in(SortId s, std::uint32_t e, Phase phase) const {
        switch (phase) {
            case Phase::Any: return true;
            case Phase::Old: return !new_elements_[s][e];
            case Phase::New: return new_elements_[s][e];
        }
        return true;
    }

    const Signature& signature() const { return x_.signature(); }

private:
    using Index = std::unordered_map<Tuple, std::vector<std::uint32_t>, TupleHash>;

    struct Rel {
        std::vector<const Tuple*> all;
        std::vector<bool> is_new;
        std::vector<std::uint32_t> fresh;
        std::map<std::uint64_t, std::unique_ptr<Index>> indices;
    };

    static bool fits(const Tuple& t, const std::vector<std::int64_t>& pattern) {
        for (std::size_t i = 0; i < pattern.size(); ++i)
            if (pattern[i] != kFree && t[i] != pattern[i]) return false;
        return true;
    }

    const Index& index_for(RelId r, std::uint64_t mask) {
        auto& rel = rels_[r];
        auto& slot = rel.indices[mask];
        if (!slot) {
            slot = std::make_unique<Index>();
            Tuple key;
            for (std::uint32_t id = 0; id < rel.all.size(); ++id) {
                key.clear();
                const auto& t = *rel.all[id];
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (mask >> i & 1) key.push_back(t[i]);
                (*slot)[key].push_back(id);
            }
        }
        return *slot;
    }

    const Structure& x_;
    std::vector<Rel> rels_;
    std::vector<std::vector<std::uint32_t>> elements_;
    std::vector<std::vector<bool>> new_elements_;
};

/// The live structure, read through set lookups. Used for the extension test
/// while the structure is being modified between lookups.
class Direct {
public:
    explicit Direct(const Structure& x) : x_(x) {}

    template <class F>
    void tuples(RelId r, const std::vector<std::int64_t>& pattern, Phase, F&& visit) {
        bool all_bound = true;
        for (auto p : pattern) all_bound = all_bound && p != kFree;
        const auto& set = x_.tuples(r);
        if (all_bound) {
            Tuple t(pattern.begin(), pattern.end());
            auto it = set.find(t);
            if (it != set.end()) visit(*it);
            return;
        }
        for (const auto& t : set) {
            bool ok = true;
            for (std::size_t i = 0; i < pattern.size() && ok; ++i) ok = pattern[i] == kFree || t[i] == pattern[i];
            if (ok && !visit(t)) return;
        }
    }

    template <class F>
    void elements(SortId s, Phase, F&& visit) {
        for (auto e : x_.canonical_elements(s))
            if (!visit(e)) return;
    }

    bool element_in(SortId, std::uint32_t, Phase) const { return true; }

    const Signature& signature() const { return x_.signature(); }

private:
    const Structure& x_;
};

/// Backtracking join over compiled atoms in written order. `emit` returns
/// false to stop the search.
template <class Source, class Emit>
class Matcher {
public:
    Matcher(Source& src, const CompiledQuery& q, const std::vector<CompiledAtom>& atoms, Emit& emit)
        : src_(src), q_(q), atoms_(atoms), emit_(emit), values_(q.variables.size(), 0), bound_(q.variables.size(), 0) {}

    void bind(std::uint32_t var, std::uint32_t value) {
        values_[var] = value;
        bound_[var] = 1;
    }

    /// delta_pos < 0 runs without phases.
    void run(std::ptrdiff_t delta_pos) {
        delta_pos_ = delta_pos;
        stop_ = false;
        search(0);
    }

    const std::vector<std::uint32_t>& values() const { return values_; }

private:
    Phase phase(std::size_t k) const {
        if (delta_pos_ < 0) return Phase::Any;
        const auto d = static_cast<std::size_t>(delta_pos_);
        return k < d ? Phase::Old : k == d ? Phase::New : Phase::Any;
    }

    SortId sort_of(std::uint32_t var) const { return q_.variables[var].sort; }

    void search(std::size_t k) {
        if (stop_) return;
        if (k == atoms_.size()) {
            if (!emit_(values_)) stop_ = true;
            return;
        }
        const auto& a = atoms_[k];
        const auto ph = phase(k);
        switch (a.kind) {
            case Atom::Kind::Rel: rel_atom(k, a, ph); break;
            case Atom::Kind::Defined: {
                const auto v = a.vars[0];
                if (bound_[v]) {
                    if (src_.element_in(sort_of(v), values_[v], ph)) search(k + 1);
                } else {
                    src_.elements(sort_of(v), ph, [&](std::uint32_t e) {
                        bind(v, e);
                        search(k + 1);
                        bound_[v] = 0;
                        return !stop_;
                    });
                }
                break;
            }
            case Atom::Kind::Equal: {
                const auto l = a.vars[0], r = a.vars[1];
                const auto s = sort_of(l);
                if (bound_[l] && bound_[r]) {
                    if (values_[l] == values_[r] && src_.element_in(s, values_[l], ph)) search(k + 1);
                } else if (bound_[l] || bound_[r]) {
                    const auto b = bound_[l] ? l : r, u = bound_[l] ? r : l;
                    if (!src_.element_in(s, values_[b], ph)) break;
                    bind(u, values_[b]);
                    search(k + 1);
                    bound_[u] = 0;
                } else {
                    src_.elements(s, ph, [&](std::uint32_t e) {
                        bind(l, e);
                        bind(r, e);
                        search(k + 1);
                        bound_[l] = 0;
                        bound_[r] = 0;
                        return !stop_;
                    });
                }
                break;
            }
        }
    }

    void rel_atom(std::size_t k, const CompiledAtom& a, Phase ph) {
        std::vector<std::int64_t> pattern(a.vars.size(), kFree);
        for (std::size_t i = 0; i < a.vars.size(); ++i)
            if (bound_[a.vars[i]]) pattern[i] = values_[a.vars[i]];
        std::vector<std::uint32_t> newly;
        src_.tuples(a.rel, pattern, ph, [&](const Tuple& t) {
            newly.clear();
            bool ok = true;
            for (std::size_t i = 0; i < t.size() && ok; ++i) {
                const auto v = a.vars[i];
                if (bound_[v]) {
                    ok = values_[v] == t[i];
                } else {
                    bind(v, t[i]);
                    newly.push_back(v);
                }
            }
            if (ok) search(k + 1);
            for (auto v : newly) bound_[v] = 0;
            return !stop_;
        });
    }

    Source& src_;
    const CompiledQuery& q_;
    const std::vector<CompiledAtom>& atoms_;
    Emit& emit_;
    std::vector<std::uint32_t> values_;
    std::vector<char> bound_;
    std::ptrdiff_t delta_pos_ = -1;
    bool stop_ = false;
};

}  // namespace

std::vector<Match> find_matches(const CompiledQuery& q, const Structure& x, const Delta* delta) {
    for (const auto& a : q.premise)
        if (a.kind == Atom::Kind::Rel && a.vars.size() > 64)
            throw PreconditionError("relations of arity above 64 are not supported by the matcher");
    std::vector<Match> out;
    Snapshot snap(x, delta);
    auto emit = [&](const std::vector<std::uint32_t>& values) {
        out.push_back(Match{0, std::vector<std::uint32_t>(values.begin(), values.begin() + q.premise_vars)});
        return true;
    };
    Matcher matcher(snap, q, q.premise, emit);
    if (!delta) {
        matcher.run(-1);
    } else {
        for (std::size_t d = 0; d < q.premise.size(); ++d) matcher.run(static_cast<std::ptrdiff_t>(d));
    }
    return out;
}

std::vector<Match> find_matches(const Formula& f, const Structure& x, const Delta* delta) {
    return find_matches(compile(f), x, delta);
}

bool extends(const CompiledQuery& q, const Structure& x, std::span<const std::uint32_t> premise_values) {
    Direct direct(x);
    bool found = false;
    auto emit = [&](const std::vector<std::uint32_t>&) {
        found = true;
        return false;
    };
    Matcher matcher(direct, q, q.conclusion, emit);
    for (std::uint32_t v = 0; v < q.premise_vars; ++v) matcher.bind(v, x.find(q.variables[v].sort, premise_values[v]));
    matcher.run(-1);
    return found;
}

}  // namespace hornlog
