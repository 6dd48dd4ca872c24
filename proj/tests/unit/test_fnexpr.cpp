#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fnexpr/calculus.hpp"
#include "fnexpr/eval.hpp"
#include "fnexpr/sign_partition.hpp"

using namespace pfc;

namespace {

Box interval_box(const Rational& lo, const Rational& hi) { return Box{{lo, hi}}; }

double eval_d(Expr e, double x) {
  PrecisionScope s(128);
  Interval v = eval_point(e, {Rational(x)});
  return (v.lower_d() + v.upper_d()) / 2;
}

}  // namespace

TEST(Parse, PrecedenceAndErrors) {
  EXPECT_EQ(to_string(parse_expr("2^x")), "2^x");
  EXPECT_EQ(parse_expr("-x^2"), ex::neg(ex::pow_int(ex::var(0), 2)));
  EXPECT_EQ(parse_expr("sin(3*x)/2"), ex::mul(ex::constant(Rational(1, 2)), ex::sin(ex::mul(ex::constant(3), ex::var(0)))));
  EXPECT_EQ(arity(parse_expr("exp(x+y)")), 2);
  EXPECT_EQ(parse_expr("x*y"), parse_expr("x * y"));
  EXPECT_THROW(parse_expr("exp(x"), Error);
  EXPECT_THROW(parse_expr("foo(x)"), Error);
  EXPECT_THROW(parse_expr("0.5*x"), Error);
  EXPECT_EQ(parse_expr("~0.5*x"), parse_expr("x/2"));
}

TEST(Parse, PrintRoundTrip) {
  for (const char* s : {"exp(x) + 2*sin(3*x)/5", "(x - 1)^3*y", "2^(x + y)", "log(1 + x^2) - cos(x*y)",
                        "1/(1 + x)", "x^(1/3)", "-(x*y)"}) {
    Expr e = parse_expr(s);
    EXPECT_EQ(parse_expr(to_string(e)), e) << s << " -> " << to_string(e);
  }
}

TEST(Parse, DomainMismatch) {
  EXPECT_THROW(ExprFn::parse("x+y", unit_box(1)), Error);
  EXPECT_THROW(ExprFn::parse("log(x)", interval_box(-1, 1)), Error);
}

TEST(Derive, Examples) {
  Expr ex3 = derive(parse_expr("exp(x)"), MultiIndex{3});
  EXPECT_EQ(ex3, parse_expr("exp(x)"));
  EXPECT_EQ(derive(parse_expr("x*y"), MultiIndex{1, 1}), ex::constant(1));
  Expr d2 = derive(parse_expr("sin(2*x)"), MultiIndex{2});
  double h = std::ldexp(1.0, -10), x = 1.0 / 3;
  double fd = (std::sin(2 * (x + h)) - 2 * std::sin(2 * x) + std::sin(2 * (x - h))) / (h * h);
  EXPECT_NEAR(eval_d(d2, x), fd, std::ldexp(1.0, -8));
  EXPECT_NEAR(eval_d(d2, x), -4 * std::sin(2 * x), 1e-12);
}

TEST(Derive, RepeatedApplicationCommutes) {
  Expr f = parse_expr("exp(x*y) + sin(x)*y^2");
  Expr a = derive(derive(f, 0), 1);
  Expr b = derive(derive(f, 1), 0);
  std::vector<Interval> pt = point_intervals({Rational(1, 3), Rational(2, 5)});
  Interval va = eval_interval(a, pt), vb = eval_interval(b, pt);
  EXPECT_TRUE(intersect(va, vb).has_value());
}

TEST(EvalBox, Examples) {
  auto sq = ExprFn::parse("x^2", unit_box(1));
  Interval v = eval_box(sq, unit_box(1));
  EXPECT_TRUE(v.contains(0) && v.contains(1));
  EXPECT_LE(v.width(), 1 + Rational(1, 1 << 20));

  auto e = ExprFn::parse("exp(x)", unit_box(1));
  Interval p = eval_box(e, Box{{0, 0}}, 128);
  EXPECT_TRUE(p.contains(1));
  EXPECT_LE(p.width(), Rational(1, BigInt(1) << 64));

  auto s = ExprFn::parse("sin(x)", interval_box(0, 4));
  Interval r = eval_box(s, interval_box(0, 4));
  EXPECT_GE(r.lower(), -1 - Rational(1, 1 << 20));
  EXPECT_LE(r.upper(), 1 + Rational(1, 1 << 20));
  EXPECT_THROW(eval_box(s, interval_box(0, 5)), Error);
}

TEST(EvalBox, EnclosureSoundnessRandom) {
  std::mt19937_64 rng(11);
  const char* fs[] = {"exp(x)*sin(3*x)", "log(2 + x) - x^3/7", "cos(x)^2 + 1/(3 + x)", "2^x - x*exp(-x)",
                      "(1 + x)^(1/3)"};
  std::uniform_int_distribution<int> num(0, 1000);
  int checks = 0;
  for (int it = 0; it < 200; ++it)
    for (const char* s : fs) {
      Rational a(num(rng), 1000), b(num(rng), 1000);
      if (a > b) std::swap(a, b);
      auto f = ExprFn::parse(s, unit_box(1));
      Interval box = eval_box(f, interval_box(a, b));
      Rational p = a + (b - a) * Rational(num(rng), 1000);
      PrecisionScope hp(256);
      Interval v = eval_point(f.tree(), {p});
      EXPECT_TRUE(v.subset_of(box) || intersect(v, box).has_value()) << s;
      EXPECT_TRUE(box.contains(v.mid())) << s;
      ++checks;
    }
  EXPECT_EQ(checks, 1000);
}

TEST(TaylorJet, Examples) {
  auto e = taylor_jet(ExprFn::parse("exp(x)", unit_box(1)), {0}, 2);
  EXPECT_TRUE(e[0].contains(1));
  EXPECT_TRUE(e[1].contains(1));
  EXPECT_TRUE(e[2].contains(Rational(1, 2)));

  auto c = taylor_jet(ExprFn::parse("x^3", interval_box(0, 2)), {1}, 3);
  for (int k = 0; k <= 3; ++k) EXPECT_TRUE(c[k].contains(Rational(k == 0 || k == 3 ? 1 : 3)));

  auto g = taylor_jet(ExprFn::parse("1/(1+x)", unit_box(1)), {0}, 3);
  for (int k = 0; k <= 3; ++k) EXPECT_TRUE(g[k].contains(k % 2 ? -1 : 1));
}

TEST(TaylorJet, CoherentWithSymbolicDerivatives) {
  Expr f = parse_expr("exp(x)*sin(x*y) + log(1 + x^2*y)");
  std::vector<Rational> x0{Rational(1, 3), Rational(3, 4)};
  auto j = eval_jet(f, box_seeds(point_intervals(x0), 4));
  const JetLayout& L = *j.layout();
  for (size_t i = 0; i < L.size(); ++i) {
    const MultiIndex& a = L.alpha(i);
    Interval d = eval_point(derive(f, a), x0);
    BigInt fact = factorial(a[0]) * factorial(a[1]);
    Interval scaled = d / Interval(Rational(fact));
    EXPECT_TRUE(intersect(scaled, j[i]).has_value());
  }
}

TEST(TaylorJet, ProductMatchesJetMul) {
  auto L = JetLayout::get(1, 6);
  auto seed = Jet<Rational>::variable(L, 0, Rational(1, 2));
  Expr f = parse_expr("x^2 + 3*x"), g = parse_expr("1/(2 - x)");
  auto jf = eval_jet_exact(f, {seed});
  auto jg = eval_jet_exact(g, {seed});
  auto jp = eval_jet_exact(ex::mul(f, g), {seed});
  auto prod = jet_mul(jf, jg);
  for (size_t i = 0; i < prod.size(); ++i) EXPECT_EQ(prod[i], jp[i]);
}

TEST(ExactValue, Examples) {
  auto f = ExprFn::parse("2^x", interval_box(0, 4));
  auto r = exact_value(f, {3});
  EXPECT_EQ(r.kind, ExactResult::Exact);
  EXPECT_EQ(r.value, 8);
  auto s = exact_value(f, {Rational(1, 2)}, Rational(3, 2));
  EXPECT_EQ(s.kind, ExactResult::NotEqual);
  EXPECT_LE(s.precision, 64);
  auto e = exact_value(ExprFn::parse("exp(x)", unit_box(1)), {0});
  EXPECT_EQ(e.kind, ExactResult::Exact);
  EXPECT_EQ(e.value, 1);
  auto u = exact_value(ExprFn::parse("exp(x)", unit_box(1)), {Rational(1, 2)});
  EXPECT_EQ(u.kind, ExactResult::Unknown);
  auto p = exact_value(ExprFn::parse("4^x", unit_box(1)), {Rational(1, 2)});
  EXPECT_EQ(p.kind, ExactResult::Exact);
  EXPECT_EQ(p.value, 2);
}

TEST(SignPartition, Examples) {
  auto lin = ExprFn::parse("x - 1/2", unit_box(1));
  auto cells = sign_partition({lin}, {0, 1});
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].interval, (RInterval{0, Rational(1, 2)}));
  EXPECT_EQ(cells[0].signs[0], -1);
  EXPECT_TRUE(cells[1].degenerate);
  EXPECT_EQ(cells[1].interval, (RInterval{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(cells[1].signs[0], 0);
  EXPECT_EQ(cells[2].signs[0], 1);

  auto sn = ExprFn::parse("sin(355/113*x)", unit_box(1));
  auto sc = sign_partition({sn}, {Rational(1, 4), Rational(3, 4)});
  ASSERT_EQ(sc.size(), 1u);
  EXPECT_EQ(sc[0].signs[0], 1);

  auto q = ExprFn::parse("x^2 - x + 1", unit_box(1));
  auto qc = sign_partition({q}, {0, 1});
  ASSERT_EQ(qc.size(), 1u);
  EXPECT_EQ(qc[0].signs[0], 1);
}

TEST(SignPartition, SoundOnDenseSamples) {
  std::vector<ExprFn> fs{ExprFn::parse("sin(8*x)", unit_box(1)), ExprFn::parse("cos(8*x)", unit_box(1)),
                         ExprFn::parse("x^3 - x/3", unit_box(1))};
  auto cells = sign_partition(fs, {0, 1});
  for (auto& c : cells) {
    if (c.degenerate) continue;
    for (int k = 1; k < 1000; ++k) {
      Rational p = c.interval.lo + c.interval.width() * Rational(k, 1000);
      for (size_t i = 0; i < fs.size(); ++i) {
        double v = eval_d(fs[i].tree(), p.get_d());
        if (c.signs[i] > 0) EXPECT_GT(v, 0);
        if (c.signs[i] < 0) EXPECT_LT(v, 0);
      }
    }
  }
}

TEST(SignPartition, IdenticallyZeroIsNotAnError) {
  auto z = ExprFn::parse("x - x", unit_box(1));
  auto cells = sign_partition({z}, {0, 1});
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].signs[0], 0);
  EXPECT_FALSE(cells[0].degenerate);
}

TEST(Expr, HashConsingSharesDerivatives) {
  Expr f = parse_expr("exp(sin(x))");
  size_t before = dag_size(derive(f, MultiIndex{6}));
  EXPECT_LT(before, 400u);
  EXPECT_EQ(derive(f, 0), derive(parse_expr("exp(sin(x))"), 0));
}
