#pragma once

#include <string>

#include "hornlog/ast.hpp"

namespace hornlog {

std::string print_signature(const Signature& sig);
std::string print_term(const Term& t, const Signature& sig);
/// Variables whose sort cannot be inferred from use get a `:Sort`
/// annotation at their first occurrence.
std::string print_formula(const Formula& f, const Signature& sig);
/// `F => G` without the `rule` keyword or the terminating ';'.
std::string print_sequent(const Sequent& s, const Signature& sig);
/// Declarations followed by one `rule ...;` line per sequent.
std::string print_theory(const Theory& t);

}  // namespace hornlog
