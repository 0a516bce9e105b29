#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hornlog/structure.hpp"

namespace hornlog {

/// Reads a facts file:
///
///     sort V: a b c;
///     E(a, b);
///     f(a) = b;       # or f(a, b); for a function symbol
///     a = c;          # merged on load
///     merged:
///       d -> a;       # d is another name for a
///
/// Sorts not declared in the file are empty. Throws ParseError.
Structure parse_facts(std::string_view text, SignaturePtr sig);

/// Display name of every allocated element: its own name when it has one,
/// otherwise `_<sort>#<k>` with k counting unnamed canonical elements per
/// sort (skipping names already in use). Non-canonical unnamed elements get
/// the name of their representative.
std::vector<std::vector<std::string>> display_names(const Structure& x);

struct MergedName {
    SortId sort = 0;
    std::string loser;
    std::string survivor;
};

/// Named elements that are no longer canonical, with their survivors.
std::vector<MergedName> merged_names(const Structure& x, const std::vector<std::vector<std::string>>& names);

/// Deterministic text form. Relation kinds are taken from `display`, which
/// must have the same shape as x's signature; function graphs print as
/// `f(a, b) = c;`.
std::string write_facts(const Structure& x, const Signature& display);
std::string write_facts(const Structure& x);

}  // namespace hornlog
