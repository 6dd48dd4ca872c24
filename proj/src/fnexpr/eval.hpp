#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "fnexpr/expr.hpp"
#include "jetcalc/jet.hpp"
#include "numeric/interval.hpp"

namespace pfc {

struct RInterval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
  Rational mid() const {
    Rational m = (lo + hi) / 2;
    m.canonicalize();
    return m;
  }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool operator==(const RInterval& o) const { return lo == o.lo && hi == o.hi; }
};
using Box = std::vector<RInterval>;

std::vector<Interval> to_intervals(const Box& box);
std::vector<Interval> point_intervals(const std::vector<Rational>& p);
Box unit_box(int dim);

// Expression together with a validated domain box.
class ExprFn {
 public:
  ExprFn(Expr tree, Box domain);
  static ExprFn parse(std::string_view text, const Box& domain);

  Expr tree() const { return tree_; }
  const Box& domain() const { return domain_; }
  int arity() const { return static_cast<int>(domain_.size()); }

 private:
  Expr tree_;
  Box domain_;
};

// Interval evaluation with a memo shared across all roots evaluated by one
// instance.
class IntervalEvaluator {
 public:
  explicit IntervalEvaluator(std::vector<Interval> box) : box_(std::move(box)) {}
  Interval eval(Expr e);

 private:
  std::vector<Interval> box_;
  std::unordered_map<Expr, Interval> memo_;
};

Interval eval_interval(Expr e, const std::vector<Interval>& box);
Interval eval_point(Expr e, const std::vector<Rational>& p);

// Enclosure of { x in [lo, hi] : f(x) in w } for an inverse branch.
Interval inverse_enclosure(const InverseBranch& br, const Interval& w);

// Exact value via rational arithmetic and the identity registry; nullopt when
// the registry cannot decide. Throws on domain violations.
std::optional<Rational> eval_exact(Expr e, const std::vector<Rational>& p);

class JetEvaluator {
 public:
  explicit JetEvaluator(std::vector<Jet<Interval>> seeds);
  Jet<Interval> eval(Expr e);

 private:
  Jet<Interval> eval_inverse(Expr e);
  std::vector<Jet<Interval>> seeds_;
  JetLayout::Ptr layout_;
  std::unordered_map<Expr, Jet<Interval>> memo_;
};

Jet<Interval> eval_jet(Expr e, const std::vector<Jet<Interval>>& seeds);
Jet<Rational> eval_jet_exact(Expr e, const std::vector<Jet<Rational>>& seeds);

// Seeds x_i = X_i + t_i over a box (point boxes give ordinary Taylor jets).
std::vector<Jet<Interval>> box_seeds(const std::vector<Interval>& box, int order);

Interval eval_box(const ExprFn& f, const Box& box, mpfr_prec_t precision = kDefaultPrecision);
Jet<Interval> taylor_jet(const ExprFn& f, const std::vector<Rational>& x0, int r);

// Reversion of f(x0 + t) = a0 + a1 t + ...: coefficients g1..gr of the inverse
// series in h = w - a0, returned with g[0] unused.
std::vector<Interval> revert_series(const std::vector<Interval>& a);

struct ExactResult {
  enum Kind { Exact, NotEqual, Unknown } kind;
  Rational value;  // Exact: the value; NotEqual/Unknown: the queried target
  mpfr_prec_t precision = 0;
};

ExactResult exact_value(const ExprFn& f, const std::vector<Rational>& p,
                        const std::optional<Rational>& target = std::nullopt,
                        mpfr_prec_t max_precision = 4096);

}  // namespace pfc
