#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hornlog {

using SortId = std::uint32_t;
using RelId = std::uint32_t;

/// Raised for unknown symbols, arity/sort mismatches and duplicate names.
class SignatureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RelationKind { Predicate, Function };

/// A relation symbol. `arity` is always the relational arity: a function
/// symbol f : s1 x ... x sn -> s is stored with arity (s1, ..., sn, s).
struct Relation {
    std::string name;
    std::vector<SortId> arity;
    RelationKind kind = RelationKind::Predicate;

    bool is_function() const { return kind == RelationKind::Function; }
    /// Argument sorts of a function symbol (all but the result sort).
    std::span<const SortId> arguments() const {
        return is_function() ? std::span<const SortId>(arity).first(arity.size() - 1)
                             : std::span<const SortId>(arity);
    }
    SortId result() const { return arity.back(); }

    friend bool operator==(const Relation&, const Relation&) = default;
};

class Signature {
public:
    SortId add_sort(std::string name);
    RelId add_predicate(std::string name, std::vector<SortId> arity);
    RelId add_function(std::string name, std::vector<SortId> arguments, SortId result);

    std::optional<SortId> find_sort(std::string_view name) const;
    std::optional<RelId> find_relation(std::string_view name) const;
    SortId sort(std::string_view name) const;
    RelId relation(std::string_view name) const;

    std::size_t sort_count() const { return sorts_.size(); }
    std::size_t relation_count() const { return relations_.size(); }
    const std::string& sort_name(SortId s) const;
    const Relation& rel(RelId r) const;
    const std::vector<std::string>& sorts() const { return sorts_; }
    const std::vector<Relation>& relations() const { return relations_; }

    bool has_functions() const;
    std::vector<RelId> functions() const;

    /// Same sorts and same relational arities, relation kinds ignored. Structures
    /// over shape-compatible signatures are interchangeable.
    bool same_shape(const Signature& other) const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    void check_fresh_relation(const std::string& name) const;
    void check_sorts(std::span<const SortId> sorts) const;

    std::vector<std::string> sorts_;
    std::vector<Relation> relations_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// The signature with every function symbol re-kinded as a predicate on its
/// graph. Relation ids are shared with the original.
Signature relationalize(const Signature& sig);

}  // namespace hornlog
