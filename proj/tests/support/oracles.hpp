#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <utility>

#include "hornlog/ast.hpp"
#include "hornlog/structure.hpp"

namespace hornlog::testing {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Warshall closure on vertices 0..n-1.
std::set<Edge> transitive_closure(std::size_t n, const std::set<Edge>& edges);

/// Satisfaction by trying every assignment of premise variables and then of
/// conclusion-only variables. Composite terms are evaluated through the
/// graph tuples of x, so this also gives partial Horn semantics on algebraic
/// structures. Shares no code with the matcher.
bool oracle_satisfies(const Structure& x, const Sequent& s);
bool oracle_satisfies(const Structure& x, const Theory& t);

/// Relation-preserving maps counted by running through every map.
std::size_t oracle_count_morphisms(const Structure& a, const Structure& b);

using StructureVisitor = std::function<void(const Structure&)>;

/// Every structure whose sorts have between 0 and max_per_sort elements,
/// with every subset of tuples. Elements carry no equalities.
void enumerate_structures(SignaturePtr sig, std::size_t max_per_sort, const StructureVisitor& visit);

/// Every algebraic structure up to the size bound: predicate subsets times
/// all partial function tables.
void enumerate_algebras(SignaturePtr sig, std::size_t max_per_sort, const StructureVisitor& visit);

/// No relabeling of the carriers gives a lexicographically smaller tuple
/// encoding. Exactly one structure per isomorphism class passes.
bool is_canonical_labeling(const Structure& x);

}  // namespace hornlog::testing
