#pragma once

#include "hornlog/ast.hpp"
#include "hornlog/structure.hpp"

namespace hornlog {

/// The signature plus `Eq_<sort> : s * s` for every sort, appended after the
/// existing relations. Throws SignatureError on a name collision.
SignaturePtr setoid_signature(const Signature& sig);

/// The Eq relation of sort s in a setoid signature.
RelId eq_relation(const Signature& setoid, SortId s);

/// Equivalence sequents per sort, congruence sequents per original relation,
/// then the input sequents with `u = v` rewritten to `Eq_s(u, v)`.
Theory setoid_transform(const Theory& t);

/// As setoid_transform without congruence sequents; instead the i-th premise
/// occurrence (i >= 2) of each variable v is renamed to a fresh `v<i>` and
/// `Eq_s(v, v<i>)` is appended to the premise.
Theory sparse_setoid_transform(const Theory& t);

/// Quotients each carrier by Eq and drops the Eq relations. Throws
/// PreconditionError when some Eq is not an equivalence relation.
Structure quotient_model(const Structure& y, SignaturePtr original);

/// The structure with Eq interpreted as the diagonal.
Structure diagonal_embed(const Structure& x, SignaturePtr setoid);

/// Adds a function symbol `f_<rule>_<var>` for every conclusion-only variable,
/// with the premise variables (first-occurrence order) as arguments. Each
/// rule F => G becomes F => G' with those variables replaced by their terms,
/// plus `f(...)! => F` per new symbol when F is nonempty and
/// `F & G => v = f(...) & ...` when the rule had conclusion-only variables.
Theory epic_transform(const Theory& t);

/// The reduct of x to a signature whose sorts and relations form a prefix of
/// x's signature.
Structure reduct(const Structure& x, SignaturePtr smaller);

}  // namespace hornlog
