#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numeric/rational.hpp"

namespace pfc {

enum class Op : uint8_t { Const, Var, Add, Sub, Mul, Div, Neg, Exp, Log, Sin, Cos, PowInt, Pow, Inv };

struct Node;
// Interned node; structurally equal trees share one pointer.
using Expr = const Node*;

// Branch of the inverse of a univariate f (in variable `var`), strictly
// monotone on [lo, hi]. df is the symbolic derivative of f.
struct InverseBranch {
  Expr f;
  Expr df;
  int var;
  Rational lo, hi;
  bool increasing;
};

struct Node {
  Op op;
  Expr a = nullptr;
  Expr b = nullptr;
  long n = 0;  // variable index or integer exponent
  Rational value;
  const InverseBranch* inv = nullptr;
  size_t hash = 0;
  uint64_t id = 0;
};

namespace ex {

Expr constant(const Rational& q);
Expr constant(long v);
Expr var(int index);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr exp(Expr a);
Expr log(Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr pow_int(Expr a, long n);
Expr pow(Expr a, Expr b);
// Inverse of f restricted to [lo, hi], applied to arg.
Expr inverse(Expr f, int var, const Rational& lo, const Rational& hi, bool increasing, Expr arg);

bool is_const(Expr e);
bool is_const(Expr e, const Rational& q);

}  // namespace ex

// Highest variable index used plus one.
int arity(Expr e);
bool depends_on(Expr e, int var);
// Number of distinct DAG nodes reachable from e.
size_t dag_size(Expr e);
size_t interned_count();

std::string to_string(Expr e);

// base^e when the result is rational.
std::optional<Rational> exact_rational_power(const Rational& base, const Rational& e);

// Standard precedence; variables x, y, z (or x1, x2, ...); functions exp, log,
// sin, cos, sqrt; a^b with integer constant b becomes an integer power.
Expr parse_expr(std::string_view text);

}  // namespace pfc
