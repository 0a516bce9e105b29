#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hornlog/signature.hpp"

namespace hornlog {

struct SourceLoc {
    std::uint32_t line = 0;
    std::uint32_t column = 0;

    friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

/// A variable, or an application of a function symbol to argument terms.
struct Term {
    std::optional<RelId> func;
    std::string var;
    std::vector<Term> args;
    SortId sort = 0;

    static Term variable(std::string name, SortId sort);
    static Term apply(const Signature& sig, RelId f, std::vector<Term> args);

    bool is_var() const { return !func.has_value(); }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    enum class Kind { Rel, Defined, Equal };

    Kind kind = Kind::Rel;
    RelId rel = 0;  ///< only meaningful for Rel
    std::vector<Term> args;

    static Atom relation(RelId r, std::vector<Term> args);
    static Atom defined(Term t);
    static Atom equal(Term a, Term b);

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finite conjunction; empty means true.
using Formula = std::vector<Atom>;

struct Sequent {
    Formula premise;
    Formula conclusion;
    SourceLoc loc;

    /// Structural equality; source locations are ignored.
    friend bool operator==(const Sequent& a, const Sequent& b) {
        return a.premise == b.premise && a.conclusion == b.conclusion;
    }
};

struct Theory {
    SignaturePtr sig;
    std::vector<Sequent> sequents;

    friend bool operator==(const Theory& a, const Theory& b) {
        return *a.sig == *b.sig && a.sequents == b.sequents;
    }
};

struct Variable {
    std::string name;
    SortId sort = 0;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Variables in order of first occurrence, depth-first, left to right.
std::vector<Variable> variables(const Term& t);
std::vector<Variable> variables(const Formula& f);
/// Premise variables first, then conclusion-only ones.
std::vector<Variable> variables(const Sequent& s);

/// Conclusion variables that do not occur in the premise.
std::vector<Variable> conclusion_only_variables(const Sequent& s);

/// Only bare variables as arguments and no relation atom on a function symbol.
bool is_rhl(const Term& t);
bool is_rhl(const Atom& a, const Signature& sig);
bool is_rhl(const Formula& f, const Signature& sig);
bool is_rhl(const Sequent& s, const Signature& sig);
bool is_rhl(const Theory& t);

/// No relation atom uses a function symbol.
bool is_valid_phl(const Formula& f, const Signature& sig);
bool is_valid_phl(const Sequent& s, const Signature& sig);

/// Re-checks arities and sorts of every atom and term, and that each
/// variable has a single sort per sequent. Throws SignatureError.
void validate(const Theory& t);
void validate(const Sequent& s, const Signature& sig);

}  // namespace hornlog
