#include "fnexpr/calculus.hpp"

#include <unordered_map>

#include "numeric/error.hpp"

namespace pfc {

namespace {

struct DeriveCtx {
  int var;
  std::unordered_map<Expr, Expr> memo;

  Expr d(Expr e) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    Expr r = compute(e);
    memo.emplace(e, r);
    return r;
  }

  Expr compute(Expr e) {
    using namespace ex;
    switch (e->op) {
      case Op::Const:
        return constant(0L);
      case Op::Var:
        return constant(e->n == var ? 1L : 0L);
      case Op::Add:
        return add(d(e->a), d(e->b));
      case Op::Sub:
        return sub(d(e->a), d(e->b));
      case Op::Mul:
        return add(mul(d(e->a), e->b), mul(e->a, d(e->b)));
      case Op::Div: {
        Expr da = d(e->a), db = d(e->b);
        Expr first = div(da, e->b);
        if (is_const(db, 0)) return first;
        return sub(first, div(mul(e->a, db), pow_int(e->b, 2)));
      }
      case Op::Neg:
        return neg(d(e->a));
      case Op::Exp:
        return mul(d(e->a), e);
      case Op::Log:
        return div(d(e->a), e->a);
      case Op::Sin:
        return mul(d(e->a), cos(e->a));
      case Op::Cos:
        return neg(mul(d(e->a), sin(e->a)));
      case Op::PowInt:
        return mul(mul(constant(e->n), pow_int(e->a, e->n - 1)), d(e->a));
      case Op::Pow: {
        Expr da = d(e->a), db = d(e->b);
        if (is_const(e->b)) return mul(mul(e->b, pow(e->a, constant(e->b->value - 1))), da);
        Expr t1 = mul(db, log(e->a));
        Expr t2 = div(mul(e->b, da), e->a);
        return mul(e, add(t1, t2));
      }
      case Op::Inv: {
        // x = inv(u), f(x) = u  =>  x' = u' / f'(x)
        Expr du = d(e->a);
        if (is_const(du, 0)) return constant(0L);
        std::vector<Expr> repl(e->inv->var + 1, nullptr);
        repl[e->inv->var] = e;
        Expr fprime = substitute(e->inv->df, repl);
        return div(du, fprime);
      }
    }
    fail(ErrorCode::Internal, "derive: unknown node");
  }
};

struct SubstCtx {
  const std::vector<Expr>& repl;
  std::unordered_map<Expr, Expr> memo;

  // f(inv_f(w)) -> w when f is univariate in the substituted variable.
  Expr inverse_shortcut(Expr e) {
    for (size_t v = 0; v < repl.size(); ++v) {
      Expr r = repl[v];
      if (!r || r->op != Op::Inv) continue;
      if (r->inv->f == e && r->inv->var == static_cast<int>(v)) return r->a;
    }
    return nullptr;
  }

  Expr s(Expr e) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    Expr r = inverse_shortcut(e);
    if (!r) r = compute(e);
    memo.emplace(e, r);
    return r;
  }

  Expr compute(Expr e) {
    using namespace ex;
    switch (e->op) {
      case Op::Const:
        return e;
      case Op::Var:
        if (e->n < static_cast<long>(repl.size()) && repl[e->n]) return repl[e->n];
        return e;
      case Op::Add:
        return add(s(e->a), s(e->b));
      case Op::Sub:
        return sub(s(e->a), s(e->b));
      case Op::Mul:
        return mul(s(e->a), s(e->b));
      case Op::Div:
        return div(s(e->a), s(e->b));
      case Op::Neg:
        return neg(s(e->a));
      case Op::Exp:
        return ex::exp(s(e->a));
      case Op::Log:
        return ex::log(s(e->a));
      case Op::Sin:
        return ex::sin(s(e->a));
      case Op::Cos:
        return ex::cos(s(e->a));
      case Op::PowInt:
        return pow_int(s(e->a), e->n);
      case Op::Pow:
        return ex::pow(s(e->a), s(e->b));
      case Op::Inv:
        return inverse(e->inv->f, e->inv->var, e->inv->lo, e->inv->hi, e->inv->increasing, s(e->a));
    }
    fail(ErrorCode::Internal, "substitute: unknown node");
  }
};

struct ExpandCtx {
  int nvars;
  std::unordered_map<Expr, std::optional<Polynomial>> memo;

  std::optional<Polynomial> p(Expr e) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    auto r = compute(e);
    memo.emplace(e, r);
    return r;
  }

  std::optional<Polynomial> compute(Expr e) {
    switch (e->op) {
      case Op::Const:
        return Polynomial::constant(nvars, e->value);
      case Op::Var:
        if (e->n >= nvars) return std::nullopt;
        return Polynomial::variable(nvars, static_cast<int>(e->n));
      case Op::Add:
      case Op::Sub:
      case Op::Mul: {
        auto a = p(e->a);
        if (!a) return std::nullopt;
        auto b = p(e->b);
        if (!b) return std::nullopt;
        if (e->op == Op::Add) return *a + *b;
        if (e->op == Op::Sub) return *a - *b;
        return *a * *b;
      }
      case Op::Div: {
        auto a = p(e->a);
        auto b = p(e->b);
        if (!a || !b || !b->is_constant() || b->is_zero()) return std::nullopt;
        return a->scaled(1 / b->coeff(MultiIndex(nvars, 0)));
      }
      case Op::Neg: {
        auto a = p(e->a);
        if (!a) return std::nullopt;
        return -*a;
      }
      case Op::PowInt: {
        if (e->n < 0) return std::nullopt;
        auto a = p(e->a);
        if (!a) return std::nullopt;
        return a->pow(static_cast<unsigned long>(e->n));
      }
      default:
        return std::nullopt;
    }
  }
};

}  // namespace

Expr derive(Expr e, int var) {
  DeriveCtx ctx{var, {}};
  return ctx.d(e);
}

Expr derive(Expr e, const MultiIndex& alpha) {
  Expr r = e;
  for (size_t v = 0; v < alpha.size(); ++v) {
    if (alpha[v] < 0) fail(ErrorCode::InvalidArgument, "negative multi-index entry");
    for (int k = 0; k < alpha[v]; ++k) r = derive(r, static_cast<int>(v));
  }
  return r;
}

Expr substitute(Expr e, const std::vector<Expr>& repl) {
  SubstCtx ctx{repl, {}};
  return ctx.s(e);
}

std::optional<Polynomial> expand_polynomial(Expr e, int nvars) {
  ExpandCtx ctx{nvars, {}};
  return ctx.p(e);
}

}  // namespace pfc
