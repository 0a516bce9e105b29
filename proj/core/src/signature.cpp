#include "hornlog/signature.hpp"

#include <algorithm>

namespace hornlog {

SortId Signature::add_sort(std::string name) {
    if (find_sort(name)) throw SignatureError("duplicate sort '" + name + "'");
    sorts_.push_back(std::move(name));
    return static_cast<SortId>(sorts_.size() - 1);
}

void Signature::check_fresh_relation(const std::string& name) const {
    if (find_relation(name)) throw SignatureError("duplicate relation '" + name + "'");
}

void Signature::check_sorts(std::span<const SortId> sorts) const {
    for (SortId s : sorts)
        if (s >= sorts_.size()) throw SignatureError("sort id " + std::to_string(s) + " is not declared");
}

RelId Signature::add_predicate(std::string name, std::vector<SortId> arity) {
    check_fresh_relation(name);
    check_sorts(arity);
    relations_.push_back(Relation{std::move(name), std::move(arity), RelationKind::Predicate});
    return static_cast<RelId>(relations_.size() - 1);
}

RelId Signature::add_function(std::string name, std::vector<SortId> arguments, SortId result) {
    check_fresh_relation(name);
    arguments.push_back(result);
    check_sorts(arguments);
    relations_.push_back(Relation{std::move(name), std::move(arguments), RelationKind::Function});
    return static_cast<RelId>(relations_.size() - 1);
}

std::optional<SortId> Signature::find_sort(std::string_view name) const {
    auto it = std::find(sorts_.begin(), sorts_.end(), name);
    if (it == sorts_.end()) return std::nullopt;
    return static_cast<SortId>(it - sorts_.begin());
}

std::optional<RelId> Signature::find_relation(std::string_view name) const {
    auto it = std::find_if(relations_.begin(), relations_.end(),
                           [&](const Relation& r) { return r.name == name; });
    if (it == relations_.end()) return std::nullopt;
    return static_cast<RelId>(it - relations_.begin());
}

SortId Signature::sort(std::string_view name) const {
    if (auto s = find_sort(name)) return *s;
    throw SignatureError("unknown sort '" + std::string(name) + "'");
}

RelId Signature::relation(std::string_view name) const {
    if (auto r = find_relation(name)) return *r;
    throw SignatureError("unknown relation '" + std::string(name) + "'");
}

const std::string& Signature::sort_name(SortId s) const {
    if (s >= sorts_.size()) throw SignatureError("sort id " + std::to_string(s) + " is not declared");
    return sorts_[s];
}

const Relation& Signature::rel(RelId r) const {
    if (r >= relations_.size()) throw SignatureError("relation id " + std::to_string(r) + " is not declared");
    return relations_[r];
}

bool Signature::has_functions() const {
    return std::any_of(relations_.begin(), relations_.end(), [](const Relation& r) { return r.is_function(); });
}

std::vector<RelId> Signature::functions() const {
    std::vector<RelId> out;
    for (RelId r = 0; r < relations_.size(); ++r)
        if (relations_[r].is_function()) out.push_back(r);
    return out;
}

bool Signature::same_shape(const Signature& other) const {
    if (sorts_ != other.sorts_ || relations_.size() != other.relations_.size()) return false;
    for (std::size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name != other.relations_[i].name || relations_[i].arity != other.relations_[i].arity)
            return false;
    return true;
}

Signature relationalize(const Signature& sig) {
    Signature out;
    for (const auto& s : sig.sorts()) out.add_sort(s);
    for (const auto& r : sig.relations()) out.add_predicate(r.name, r.arity);
    return out;
}

}  // namespace hornlog
