#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hornlog/ast.hpp"
#include "hornlog/lexer.hpp"

namespace hornlog {

struct Diagnostic {
    SourceLoc loc;
    std::string message;
};

struct ParsedTheory {
    Theory theory;
    std::vector<Diagnostic> warnings;
};

/// Parses declarations and rules. Variable sorts are inferred per sequent;
/// a variable may also be annotated as `x:V`. Throws ParseError.
ParsedTheory parse_theory_with_diagnostics(std::string_view text);
Theory parse_theory(std::string_view text);

/// A single `F => G`, with or without the leading `rule` and trailing `;`.
Sequent parse_sequent(std::string_view text, const Signature& sig);
Formula parse_formula(std::string_view text, const Signature& sig);

}  // namespace hornlog
