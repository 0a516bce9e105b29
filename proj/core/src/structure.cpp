#include "hornlog/structure.hpp"

#include <algorithm>

namespace hornlog {

Structure::Structure(SignaturePtr sig)
    : sig_(std::move(sig)),
      carriers_(sig_->sort_count()),
      names_(sig_->sort_count()),
      relations_(sig_->relation_count()) {}

ElementId Structure::add_element(SortId sort, std::string name) {
    if (sort >= carriers_.size()) throw SignatureError("add_element: unknown sort id " + std::to_string(sort));
    auto index = carriers_[sort].add();
    names_[sort].push_back(std::move(name));
    return ElementId{sort, index};
}

void Structure::check_element(ElementId e) const {
    if (e.sort >= carriers_.size()) throw SignatureError("unknown sort id " + std::to_string(e.sort));
    if (e.index >= carriers_[e.sort].size())
        throw SignatureError("element " + std::to_string(e.index) + " of sort '" + sig_->sort_name(e.sort) +
                             "' does not exist");
}

void Structure::check_tuple(RelId rel, const Tuple& tuple) const {
    const auto& r = sig_->rel(rel);
    if (tuple.size() != r.arity.size())
        throw SignatureError("relation '" + r.name + "' expects " + std::to_string(r.arity.size()) +
                             " components, got " + std::to_string(tuple.size()));
    for (std::size_t i = 0; i < tuple.size(); ++i) check_element(ElementId{r.arity[i], tuple[i]});
}

bool Structure::add_tuple(RelId rel, std::span<const ElementId> elements) {
    const auto& r = sig_->rel(rel);
    if (elements.size() != r.arity.size())
        throw SignatureError("relation '" + r.name + "' expects " + std::to_string(r.arity.size()) +
                             " components, got " + std::to_string(elements.size()));
    Tuple t(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].sort != r.arity[i])
            throw SignatureError("relation '" + r.name + "' position " + std::to_string(i) + " expects sort '" +
                                 sig_->sort_name(r.arity[i]) + "'");
        t[i] = elements[i].index;
    }
    return add_tuple(rel, std::move(t));
}

bool Structure::add_tuple(RelId rel, Tuple tuple) {
    check_tuple(rel, tuple);
    return relations_[rel].insert(canonical(rel, std::move(tuple))).second;
}

ElementId Structure::merge(ElementId a, ElementId b, std::vector<RewrittenTuple>* rewritten) {
    if (a.sort != b.sort)
        throw SignatureError("cannot merge elements of sorts '" + sig_->sort_name(a.sort) + "' and '" +
                             sig_->sort_name(b.sort) + "'");
    check_element(a);
    check_element(b);
    const SortId s = a.sort;
    const auto ra = carriers_[s].find(a.index);
    const auto rb = carriers_[s].find(b.index);
    if (ra == rb) return ElementId{s, ra};
    const auto survivor = carriers_[s].unite(ra, rb);
    const auto loser = survivor == ra ? rb : ra;

    for (RelId rel = 0; rel < relations_.size(); ++rel) {
        const auto& arity = sig_->rel(rel).arity;
        if (std::find(arity.begin(), arity.end(), s) == arity.end()) continue;
        auto& set = relations_[rel];
        std::vector<Tuple> stale;
        for (const auto& t : set) {
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (arity[i] == s && t[i] == loser) {
                    stale.push_back(t);
                    break;
                }
            }
        }
        for (auto& t : stale) {
            set.erase(t);
            for (std::size_t i = 0; i < t.size(); ++i)
                if (arity[i] == s && t[i] == loser) t[i] = survivor;
            if (rewritten) rewritten->push_back(RewrittenTuple{rel, t});
            set.insert(std::move(t));
        }
    }
    return ElementId{s, survivor};
}

ElementId Structure::find(ElementId e) const {
    check_element(e);
    return ElementId{e.sort, carriers_[e.sort].find(e.index)};
}

bool Structure::is_canonical(ElementId e) const {
    check_element(e);
    return carriers_[e.sort].is_root(e.index);
}

Tuple Structure::canonical(RelId rel, Tuple tuple) const {
    const auto& arity = sig_->rel(rel).arity;
    for (std::size_t i = 0; i < tuple.size(); ++i) tuple[i] = carriers_[arity[i]].find(tuple[i]);
    return tuple;
}

bool Structure::contains(RelId rel, const Tuple& tuple) const {
    check_tuple(rel, tuple);
    return relations_[rel].count(canonical(rel, tuple)) > 0;
}

std::vector<std::uint32_t> Structure::canonical_elements(SortId sort) const {
    std::vector<std::uint32_t> out;
    out.reserve(carriers_[sort].root_count());
    for (std::uint32_t i = 0; i < carriers_[sort].size(); ++i)
        if (carriers_[sort].is_root(i)) out.push_back(i);
    return out;
}

std::size_t Structure::total_canonical_count() const {
    std::size_t n = 0;
    for (const auto& c : carriers_) n += c.root_count();
    return n;
}

std::size_t Structure::total_tuple_count() const {
    std::size_t n = 0;
    for (const auto& r : relations_) n += r.size();
    return n;
}

bool Structure::check_invariants() const {
    for (RelId rel = 0; rel < relations_.size(); ++rel) {
        const auto& arity = sig_->rel(rel).arity;
        for (const auto& t : relations_[rel]) {
            if (t.size() != arity.size()) return false;
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] >= carriers_[arity[i]].size()) return false;
                if (!carriers_[arity[i]].is_root(t[i])) return false;
            }
        }
    }
    return true;
}

bool operator==(const Structure& a, const Structure& b) {
    if (!a.sig_->same_shape(*b.sig_)) return false;
    for (SortId s = 0; s < a.carriers_.size(); ++s) {
        if (a.carriers_[s].size() != b.carriers_[s].size()) return false;
        for (std::uint32_t i = 0; i < a.carriers_[s].size(); ++i)
            if (a.carriers_[s].find(i) != b.carriers_[s].find(i)) return false;
    }
    return a.relations_ == b.relations_;
}

bool is_total_function(const Structure& x, RelId f) {
    const auto& rel = x.signature().rel(f);
    if (!rel.is_function()) throw SignatureError("'" + rel.name + "' is not a function symbol");
    const auto args = rel.arguments();
    std::set<Tuple> defined;
    for (const auto& t : x.tuples(f)) defined.insert(Tuple(t.begin(), t.end() - 1));

    std::vector<std::vector<std::uint32_t>> domains;
    for (SortId s : args) domains.push_back(x.canonical_elements(s));
    Tuple current(args.size());
    // Odometer over the product of canonical carriers.
    std::vector<std::size_t> pos(args.size(), 0);
    for (const auto& d : domains)
        if (d.empty()) return true;
    while (true) {
        for (std::size_t i = 0; i < args.size(); ++i) current[i] = domains[i][pos[i]];
        if (!defined.count(current)) return false;
        std::size_t i = 0;
        for (; i < pos.size(); ++i) {
            if (++pos[i] < domains[i].size()) break;
            pos[i] = 0;
        }
        if (i == pos.size()) return true;
    }
}

bool is_algebraic(const Structure& x) {
    for (RelId f : x.signature().functions()) {
        std::set<Tuple> seen;
        for (const auto& t : x.tuples(f))
            if (!seen.insert(Tuple(t.begin(), t.end() - 1)).second) return false;
    }
    return true;
}

Structure make_structure(SignaturePtr sig, std::span<const std::size_t> sizes) {
    Structure x(std::move(sig));
    for (SortId s = 0; s < sizes.size(); ++s)
        for (std::size_t i = 0; i < sizes[s]; ++i) x.add_element(s);
    return x;
}

}  // namespace hornlog
