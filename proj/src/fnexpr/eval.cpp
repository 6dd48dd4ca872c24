#include "fnexpr/eval.hpp"

#include <functional>

#include "numeric/error.hpp"

namespace pfc {

std::vector<Interval> to_intervals(const Box& box) {
  std::vector<Interval> out;
  out.reserve(box.size());
  for (auto& b : box) out.emplace_back(b.lo, b.hi);
  return out;
}

std::vector<Interval> point_intervals(const std::vector<Rational>& p) {
  std::vector<Interval> out;
  out.reserve(p.size());
  for (auto& q : p) out.emplace_back(q);
  return out;
}

Box unit_box(int dim) { return Box(static_cast<size_t>(dim), RInterval{0, 1}); }

ExprFn::ExprFn(Expr tree, Box domain) : tree_(tree), domain_(std::move(domain)) {
  if (domain_.empty()) fail(ErrorCode::InvalidArgument, "empty domain");
  for (auto& b : domain_)
    if (b.lo > b.hi) fail(ErrorCode::InvalidArgument, "domain box with lower > upper");
  if (pfc::arity(tree_) > static_cast<int>(domain_.size()))
    fail(ErrorCode::Dimension, "function uses " + std::to_string(pfc::arity(tree_)) +
                                   " variables but the domain has dimension " +
                                   std::to_string(domain_.size()));
  eval_interval(tree_, to_intervals(domain_));
}

ExprFn ExprFn::parse(std::string_view text, const Box& domain) { return ExprFn(parse_expr(text), domain); }

Interval IntervalEvaluator::eval(Expr e) {
  auto it = memo_.find(e);
  if (it != memo_.end()) return it->second;
  Interval r;
  switch (e->op) {
    case Op::Const:
      r = Interval(e->value);
      break;
    case Op::Var:
      if (e->n >= static_cast<long>(box_.size())) fail(ErrorCode::Dimension, "variable outside the evaluation box");
      r = box_[e->n];
      break;
    case Op::Add:
      r = eval(e->a) + eval(e->b);
      break;
    case Op::Sub:
      r = eval(e->a) - eval(e->b);
      break;
    case Op::Mul:
      if (e->a == e->b)
        r = sqr(eval(e->a));
      else
        r = eval(e->a) * eval(e->b);
      break;
    case Op::Div:
      r = eval(e->a) / eval(e->b);
      break;
    case Op::Neg:
      r = -eval(e->a);
      break;
    case Op::Exp:
      r = exp(eval(e->a));
      break;
    case Op::Log:
      r = log(eval(e->a));
      break;
    case Op::Sin:
      r = sin(eval(e->a));
      break;
    case Op::Cos:
      r = cos(eval(e->a));
      break;
    case Op::PowInt:
      r = pow_int(eval(e->a), e->n);
      break;
    case Op::Pow:
      r = pow(eval(e->a), eval(e->b));
      break;
    case Op::Inv:
      r = inverse_enclosure(*e->inv, eval(e->a));
      break;
  }
  memo_.emplace(e, r);
  return r;
}

Interval eval_interval(Expr e, const std::vector<Interval>& box) {
  IntervalEvaluator ev(box);
  return ev.eval(e);
}

Interval eval_point(Expr e, const std::vector<Rational>& p) { return eval_interval(e, point_intervals(p)); }

namespace {

Interval eval_univariate(Expr f, int var, const Interval& x) {
  std::vector<Interval> box(static_cast<size_t>(var) + 1);
  box[var] = x;
  return eval_interval(f, box);
}

// Enclosure of the root of f(x) = w on [lo, hi] (clamped to the branch ends
// when w lies outside the image).
Interval inverse_at(const InverseBranch& br, mpfr_srcptr w_ptr) {
  if (!mpfr_number_p(w_ptr)) fail(ErrorCode::Domain, "inverse of an unbounded argument");
  Rational w;
  mpfr_get_q(w.get_mpq_t(), w_ptr);
  Interval wi(w);
  Interval lo_val = eval_univariate(br.f, br.var, Interval(br.lo)) - wi;
  Interval hi_val = eval_univariate(br.f, br.var, Interval(br.hi)) - wi;
  // s > 0 where f - w is "above" in the increasing orientation
  auto above = [&](const Interval& v) { return br.increasing ? v.positive() : v.negative(); };
  auto below = [&](const Interval& v) { return br.increasing ? v.negative() : v.positive(); };
  if (above(lo_val)) return Interval(br.lo);
  if (below(hi_val)) return Interval(br.hi);
  Interval X(br.lo, br.hi);
  Rational tol = Rational(1) / pow_z(2, static_cast<unsigned long>(working_precision() - 8));
  for (int iter = 0; iter < 4 * static_cast<int>(working_precision()); ++iter) {
    Rational width = X.width();
    if (width <= tol) break;
    Rational m = X.mid();
    Interval fm = eval_univariate(br.f, br.var, Interval(m)) - wi;
    Interval d = eval_univariate(br.df, br.var, X);
    if (!d.contains_zero()) {
      Interval n = Interval(m) - fm / d;
      auto next = intersect(X, n);
      if (!next) {
        // no root inside X: w sits beyond a branch end
        return above(fm) ? Interval(X.lower()) : Interval(X.upper());
      }
      if (!(next->width() < width)) {
        if (fm.contains_zero()) break;
        X = above(fm) ? Interval(X.lower(), m) : Interval(m, X.upper());
        continue;
      }
      X = *next;
      continue;
    }
    if (above(fm))
      X = Interval(X.lower(), m);
    else if (below(fm))
      X = Interval(m, X.upper());
    else
      break;
  }
  return X;
}

}  // namespace

Interval inverse_enclosure(const InverseBranch& br, const Interval& w) {
  Interval a = inverse_at(br, w.lo());
  if (w.is_point()) return a;
  Interval b = inverse_at(br, w.hi());
  return hull(a, b);
}

std::optional<Rational> eval_exact(Expr e, const std::vector<Rational>& p) {
  std::unordered_map<Expr, std::optional<Rational>> memo;
  std::function<std::optional<Rational>(Expr)> go = [&](Expr n) -> std::optional<Rational> {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::optional<Rational> r;
    switch (n->op) {
      case Op::Const:
        r = n->value;
        break;
      case Op::Var:
        if (n->n >= static_cast<long>(p.size())) fail(ErrorCode::Dimension, "variable outside the point");
        r = p[n->n];
        break;
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div: {
        auto a = go(n->a);
        auto b = go(n->b);
        if (n->op == Op::Div && b && *b == 0) fail(ErrorCode::Domain, "division by zero");
        if (a && b) {
          if (n->op == Op::Add) r = *a + *b;
          if (n->op == Op::Sub) r = *a - *b;
          if (n->op == Op::Mul) r = *a * *b;
          if (n->op == Op::Div) r = *a / *b;
        }
        break;
      }
      case Op::Neg: {
        auto a = go(n->a);
        if (a) r = -*a;
        break;
      }
      case Op::Exp: {
        auto a = go(n->a);
        if (a && *a == 0) r = Rational(1);
        break;
      }
      case Op::Log: {
        auto a = go(n->a);
        if (a && *a <= 0) fail(ErrorCode::Domain, "log of a nonpositive value");
        if (a && *a == 1) r = Rational(0);
        break;
      }
      case Op::Sin: {
        auto a = go(n->a);
        if (a && *a == 0) r = Rational(0);
        break;
      }
      case Op::Cos: {
        auto a = go(n->a);
        if (a && *a == 0) r = Rational(1);
        break;
      }
      case Op::PowInt: {
        auto a = go(n->a);
        if (a) {
          if (*a == 0 && n->n < 0) fail(ErrorCode::Domain, "negative power of zero");
          r = pow_q(*a, n->n);
        }
        break;
      }
      case Op::Pow: {
        auto a = go(n->a);
        auto b = go(n->b);
        if (a && *a < 0) fail(ErrorCode::Domain, "pow with a negative base");
        if (a && b) r = exact_rational_power(*a, *b);
        break;
      }
      case Op::Inv:
        break;
    }
    if (r) r->canonicalize();
    memo.emplace(n, r);
    return r;
  };
  return go(e);
}

std::vector<Interval> revert_series(const std::vector<Interval>& a) {
  size_t r = a.size() - 1;
  std::vector<Interval> g(r + 1);
  if (r == 0) return g;
  Interval inv_a1 = recip(a[1]);
  g[1] = inv_a1;
  // P[k][n] = [t^n] g^k
  std::vector<std::vector<Interval>> P(r + 1, std::vector<Interval>(r + 1));
  P[1][1] = g[1];
  for (size_t n = 2; n <= r; ++n) {
    Interval s;
    for (size_t k = 2; k <= n; ++k) {
      Interval acc;
      for (size_t j = 1; j + k - 1 <= n; ++j) {
        size_t m = n - j;
        if (m < k - 1) continue;
        mul_add(acc, g[j], P[k - 1][m]);
      }
      P[k][n] = acc;
      mul_add(s, a[k], acc);
    }
    g[n] = -(s * inv_a1);
    P[1][n] = g[n];
  }
  return g;
}

JetEvaluator::JetEvaluator(std::vector<Jet<Interval>> seeds) : seeds_(std::move(seeds)) {
  if (seeds_.empty()) fail(ErrorCode::InvalidArgument, "jet evaluation needs at least one seed");
  layout_ = seeds_[0].layout();
}

Jet<Interval> JetEvaluator::eval_inverse(Expr e) {
  const InverseBranch& br = *e->inv;
  Jet<Interval> u = eval(e->a);
  Interval X = inverse_enclosure(br, u[0]);
  int r = layout_->order();
  if (r == 0) return Jet<Interval>::constant(layout_, X);
  auto L1 = JetLayout::get(1, r);
  std::vector<Jet<Interval>> s(static_cast<size_t>(br.var) + 1, Jet<Interval>(L1));
  s[br.var] = Jet<Interval>::variable(L1, 0, X);
  Jet<Interval> fj = JetEvaluator(s).eval(br.f);
  std::vector<Interval> a(fj.coeffs().begin(), fj.coeffs().end());
  std::vector<Interval> g = revert_series(a);
  g[0] = Interval();
  Jet<Interval> h = u;
  h[0] = Interval();
  Jet<Interval> out = jet_horner(g, h);
  out[0] = X;
  return out;
}

Jet<Interval> JetEvaluator::eval(Expr e) {
  auto it = memo_.find(e);
  if (it != memo_.end()) return it->second;
  Jet<Interval> r;
  switch (e->op) {
    case Op::Const:
      r = Jet<Interval>::constant(layout_, Interval(e->value));
      break;
    case Op::Var:
      if (e->n >= static_cast<long>(seeds_.size())) fail(ErrorCode::Dimension, "variable without a jet seed");
      r = seeds_[e->n];
      break;
    case Op::Add:
      r = eval(e->a) + eval(e->b);
      break;
    case Op::Sub:
      r = eval(e->a) - eval(e->b);
      break;
    case Op::Mul: {
      Expr a = e->a, b = e->b;
      if (a->op == Op::Const) {
        r = eval(b) * Interval(a->value);
      } else {
        r = jet_mul(eval(a), eval(b));
      }
      break;
    }
    case Op::Div:
      r = jet_div(eval(e->a), eval(e->b));
      break;
    case Op::Neg:
      r = -eval(e->a);
      break;
    case Op::Exp:
      r = jet_exp(eval(e->a));
      break;
    case Op::Log:
      r = jet_log(eval(e->a));
      break;
    case Op::Sin:
    case Op::Cos: {
      Jet<Interval> s, c;
      jet_sin_cos(eval(e->a), s, c);
      r = e->op == Op::Sin ? s : c;
      break;
    }
    case Op::PowInt:
      r = jet_pow_int(eval(e->a), e->n);
      break;
    case Op::Pow: {
      Jet<Interval> base = eval(e->a);
      if (!base[0].positive()) fail(ErrorCode::Domain, "pow with a base not contained in (0, inf)");
      r = jet_exp(jet_mul(eval(e->b), jet_log(base)));
      // the constant term is sharper via direct interval pow
      r[0] = pow(base[0], eval(e->b)[0]);
      break;
    }
    case Op::Inv:
      r = eval_inverse(e);
      break;
  }
  memo_.emplace(e, r);
  return r;
}

Jet<Interval> eval_jet(Expr e, const std::vector<Jet<Interval>>& seeds) {
  JetEvaluator ev(seeds);
  return ev.eval(e);
}

Jet<Rational> eval_jet_exact(Expr e, const std::vector<Jet<Rational>>& seeds) {
  if (seeds.empty()) fail(ErrorCode::InvalidArgument, "jet evaluation needs at least one seed");
  auto layout = seeds[0].layout();
  std::unordered_map<Expr, Jet<Rational>> memo;
  std::function<Jet<Rational>(Expr)> go = [&](Expr n) -> Jet<Rational> {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Jet<Rational> r;
    switch (n->op) {
      case Op::Const:
        r = Jet<Rational>::constant(layout, n->value);
        break;
      case Op::Var:
        if (n->n >= static_cast<long>(seeds.size())) fail(ErrorCode::Dimension, "variable without a jet seed");
        r = seeds[n->n];
        break;
      case Op::Add:
        r = go(n->a) + go(n->b);
        break;
      case Op::Sub:
        r = go(n->a) - go(n->b);
        break;
      case Op::Mul:
        r = jet_mul(go(n->a), go(n->b));
        break;
      case Op::Div:
        r = jet_div(go(n->a), go(n->b));
        break;
      case Op::Neg:
        r = -go(n->a);
        break;
      case Op::Exp:
        r = jet_exp(go(n->a));
        break;
      case Op::Log:
        r = jet_log(go(n->a));
        break;
      case Op::Sin:
      case Op::Cos: {
        Jet<Rational> s, c;
        jet_sin_cos(go(n->a), s, c);
        r = n->op == Op::Sin ? s : c;
        break;
      }
      case Op::PowInt:
        r = jet_pow_int(go(n->a), n->n);
        break;
      case Op::Pow:
        r = jet_exp(jet_mul(go(n->b), jet_log(go(n->a))));
        break;
      case Op::Inv:
        throw NotExact("inverse branch in exact jet evaluation");
    }
    memo.emplace(n, r);
    return r;
  };
  return go(e);
}

std::vector<Jet<Interval>> box_seeds(const std::vector<Interval>& box, int order) {
  auto L = JetLayout::get(static_cast<int>(box.size()), order);
  std::vector<Jet<Interval>> seeds;
  for (size_t i = 0; i < box.size(); ++i) seeds.push_back(Jet<Interval>::variable(L, static_cast<int>(i), box[i]));
  return seeds;
}

namespace {

void check_inside(const ExprFn& f, const Box& box) {
  if (box.size() != f.domain().size()) fail(ErrorCode::Dimension, "box dimension differs from the domain");
  for (size_t i = 0; i < box.size(); ++i)
    if (box[i].lo < f.domain()[i].lo || box[i].hi > f.domain()[i].hi || box[i].lo > box[i].hi)
      fail(ErrorCode::Domain, "box is not contained in the function's domain");
}

}  // namespace

Interval eval_box(const ExprFn& f, const Box& box, mpfr_prec_t precision) {
  check_inside(f, box);
  PrecisionScope scope(precision);
  return eval_interval(f.tree(), to_intervals(box));
}

Jet<Interval> taylor_jet(const ExprFn& f, const std::vector<Rational>& x0, int r) {
  Box pt;
  for (auto& q : x0) pt.push_back({q, q});
  check_inside(f, pt);
  return eval_jet(f.tree(), box_seeds(point_intervals(x0), r));
}

ExactResult exact_value(const ExprFn& f, const std::vector<Rational>& p, const std::optional<Rational>& target,
                        mpfr_prec_t max_precision) {
  Box pt;
  for (auto& q : p) pt.push_back({q, q});
  check_inside(f, pt);
  if (auto v = eval_exact(f.tree(), p)) return {ExactResult::Exact, *v, 0};
  if (!target) return {ExactResult::Unknown, 0, 0};
  mpfr_prec_t prec = 64;
  for (; prec <= max_precision; prec *= 2) {
    PrecisionScope scope(prec);
    Interval enc = eval_point(f.tree(), p);
    if (!enc.contains(*target)) return {ExactResult::NotEqual, *target, prec};
  }
  return {ExactResult::Unknown, *target, prec / 2};
}

}  // namespace pfc
