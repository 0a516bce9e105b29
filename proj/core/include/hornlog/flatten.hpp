#pragma once

#include <set>
#include <string>

#include "hornlog/ast.hpp"

namespace hornlog {

/// An algebraic signature paired with its relationalization. Relation ids
/// agree between the two.
struct RelationalizedSignature {
    SignaturePtr algebraic;
    SignaturePtr relational;
};

RelationalizedSignature relationalized(SignaturePtr algebraic);

/// Hands out `_u0, _u1, ...`, skipping names in `taken`.
class FreshNames {
public:
    FreshNames() = default;
    explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

    std::string next();
    std::size_t counter() const { return counter_; }

private:
    std::set<std::string> taken_;
    std::size_t counter_ = 0;
};

std::set<std::string> variable_names(const Formula& f);
std::set<std::string> variable_names(const Sequent& s);

struct FlatteningResult {
    Formula formula;
    /// The variable standing for the flattened term's value.
    Term result;
};

/// Children first, depth-first and left to right; each application gets the
/// next fresh result variable and one graph atom.
FlatteningResult flatten_term(const Term& t, FreshNames& fresh);
Formula flatten_formula(const Formula& f, FreshNames& fresh);
/// Fresh names avoid every variable of f.
Formula flatten_formula(const Formula& f);
/// Premise first, then conclusion, with one shared counter.
Sequent flatten_sequent(const Sequent& s);

/// Every sequent flattened, over the relationalized signature.
Theory flatten_theory(const Theory& t);

/// Graph atoms f(x1, ..., xn, x) become f(x1, ..., xn) = x. `algebraic` is
/// the signature the result lives over.
Formula unflatten_formula(const Formula& f, const Signature& algebraic);
Sequent unflatten_sequent(const Sequent& s, const Signature& algebraic);

}  // namespace hornlog
