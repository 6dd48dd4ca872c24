#pragma once

#include <optional>
#include <vector>

#include "fnexpr/expr.hpp"
#include "jetcalc/layout.hpp"
#include "jetcalc/polynomial.hpp"

namespace pfc {

Expr derive(Expr e, int var);
Expr derive(Expr e, const MultiIndex& alpha);

// Replace variable i by repl[i] (nullptr keeps the variable). Rewrites
// f(inv_f(w)) to w for matching inverse branches.
Expr substitute(Expr e, const std::vector<Expr>& repl);

// Exact polynomial form when the tree only uses +, -, *, integer powers,
// and division by constants.
std::optional<Polynomial> expand_polynomial(Expr e, int nvars);

}  // namespace pfc
