#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "hornlog/ast.hpp"
#include "hornlog/structure.hpp"

namespace hornlog {

struct CompiledAtom {
    Atom::Kind kind = Atom::Kind::Rel;
    RelId rel = 0;
    std::vector<std::uint32_t> vars;
};

/// An RHL sequent with variables replaced by dense indices: premise variables
/// first (first-occurrence order), then conclusion-only variables.
struct CompiledQuery {
    std::vector<Variable> variables;
    std::size_t premise_vars = 0;
    std::vector<CompiledAtom> premise;
    std::vector<CompiledAtom> conclusion;
};

/// Throws PreconditionError unless every atom argument is a variable.
CompiledQuery compile(const Sequent& s);
CompiledQuery compile(const Formula& premise);

/// One interpretation of a premise: `values[k]` is the canonical element
/// index of premise variable k.
struct Match {
    std::size_t sequent = 0;
    std::vector<std::uint32_t> values;

    friend auto operator<=>(const Match&, const Match&) = default;
};

/// Items new since the previous round. Rel atoms are new by tuple, `v!` and
/// `u = v` atoms by element.
struct Delta {
    std::vector<std::set<Tuple>> tuples;
    std::vector<std::set<std::uint32_t>> elements;

    static Delta everything(const Structure& x);
    bool empty() const;
};

/// All interpretations of the premise of q in x, in enumeration order (atoms
/// in written order, candidates in index order). With a delta, only those
/// using at least one delta item, each exactly once.
std::vector<Match> find_matches(const CompiledQuery& q, const Structure& x, const Delta* delta = nullptr);
std::vector<Match> find_matches(const Formula& f, const Structure& x, const Delta* delta = nullptr);

/// Whether the premise interpretation extends over the conclusion in x.
bool extends(const CompiledQuery& q, const Structure& x, std::span<const std::uint32_t> premise_values);

}  // namespace hornlog
