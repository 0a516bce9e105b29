#pragma once

#include <map>
#include <string>

#include "hornlog/ast.hpp"
#include "hornlog/flatten.hpp"
#include "hornlog/morphism.hpp"

namespace hornlog {

/// A classifying structure together with its generic interpretation.
struct Classifying {
    StructurePtr structure;
    std::map<std::string, ElementId> interpretation;
};

/// [F] for an RHL formula: one element per variable (in first-occurrence
/// order), one tuple per relation atom, equality atoms merged.
Classifying classifying_structure(const Formula& f, SignaturePtr sig);

/// [F] -> [F & G] for an RHL sequent F => G.
Morphism classifying_morphism(const Sequent& s, SignaturePtr sig);

/// The free algebra on the flattening of a PHL formula: [Flat F] closed under
/// the functionality sequents. The structure lives over the relationalized
/// signature.
Classifying classifying_algebra(const Formula& f, SignaturePtr algebraic);

/// An RHL sequent whose classifying morphism is isomorphic to f. Variables are
/// named `_e<sort>#<k>`; elements of the domain come first.
Sequent sequent_from_morphism(const Morphism& f);

struct SequentFlags {
    bool is_rhl = false;
    bool injective = false;
    bool surjective = false;
    bool epic_phl = false;
    bool datalog = false;
    bool datalog_sortquant = false;
    bool datalog_choice = false;

    friend bool operator==(const SequentFlags&, const SequentFlags&) = default;
};

/// Syntactic classification. For sequents with composite terms, injectivity
/// and surjectivity refer to the flattening.
SequentFlags classify_sequent(const Sequent& s, const Signature& sig);

/// f(v1..vn, u0) & f(v1..vn, u1) => u0 = u1 per function symbol, in
/// declaration order, over the relationalized signature.
Theory functionality_theory(SignaturePtr algebraic);

/// v1! & ... & vn! => f(v1, ..., vn)!
Sequent totality_sequent(const Signature& algebraic, RelId f);

/// A theory over the relationalized signature: for algebraic signatures every
/// sequent is flattened and the functionality theory appended; relational
/// theories are returned unchanged.
Theory to_rhl(const Theory& t);

/// Appends, for each sequent S, the sequent of the codiagonal of [S].
Theory strengthen_theory(const Theory& t);

}  // namespace hornlog
