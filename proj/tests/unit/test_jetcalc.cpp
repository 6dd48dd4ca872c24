#include <gtest/gtest.h>

#include <random>

#include "fnexpr/eval.hpp"
#include "jetcalc/jet.hpp"
#include "jetcalc/jet_io.hpp"
#include "jetcalc/norms.hpp"
#include "jetcalc/polynomial.hpp"

using namespace pfc;

namespace {

Jet<Rational> univariate(std::initializer_list<Rational> cs, int order) {
  Jet<Rational> j(1, order);
  size_t i = 0;
  for (auto& c : cs) j[i++] = c;
  return j;
}

Jet<Rational> random_jet(std::mt19937_64& rng, int nvars, int order) {
  Jet<Rational> j(nvars, order);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  for (size_t i = 0; i < j.size(); ++i) j[i] = Rational(num(rng), den(rng));
  for (size_t i = 0; i < j.size(); ++i) j[i].canonicalize();
  return j;
}

}  // namespace

TEST(Majorant, Examples) {
  Polynomial p(2);
  p.add_term({1, 0}, 3);
  p.add_term({0, 1}, -2);
  EXPECT_EQ(majorant_norm(p), 5);
  EXPECT_EQ(majorant_norm(Polynomial(1)), 0);
  Polynomial q(1);
  q.add_term({2}, 1);
  q.add_term({1}, -1);
  q.add_term({0}, Rational(1, 2));
  EXPECT_EQ(majorant_norm(q), Rational(5, 2));
}

TEST(JetMul, TruncatesAndMatchesHandExpansion) {
  auto a = univariate({1, 1}, 1);
  auto sq = jet_mul(a, a);
  EXPECT_EQ(sq[0], 1);
  EXPECT_EQ(sq[1], 2);

  auto b = univariate({Rational(1, 2), 1}, 2);
  auto b2 = jet_mul(b, b);
  EXPECT_EQ(b2[0], Rational(1, 4));
  EXPECT_EQ(b2[1], 1);
  EXPECT_EQ(b2[2], 1);

  std::mt19937_64 rng(7);
  auto r = random_jet(rng, 2, 3);
  auto one = Jet<Rational>::constant(r.layout(), 1);
  auto prod = jet_mul(r, one);
  for (size_t i = 0; i < r.size(); ++i) EXPECT_EQ(prod[i], r[i]);
}

TEST(JetMul, ShapeMismatchIsAnError) {
  EXPECT_THROW(jet_mul(Jet<Rational>(1, 2), Jet<Rational>(1, 3)), Error);
  EXPECT_THROW(jet_mul(Jet<Rational>(1, 2), Jet<Rational>(2, 2)), Error);
}

TEST(JetCompose, Examples) {
  auto t = univariate({0, 1}, 2);
  auto s2 = univariate({0, 0, 1}, 2);
  auto c = jet_compose(s2, {t});
  EXPECT_EQ(c[0], 0);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], 1);

  auto outer = univariate({1, 1, 1}, 2);
  auto two_t = univariate({0, 2}, 2);
  auto d = jet_compose(outer, {two_t});
  EXPECT_EQ(d[0], 1);
  EXPECT_EQ(d[1], 2);
  EXPECT_EQ(d[2], 4);

  std::mt19937_64 rng(3);
  auto a = random_jet(rng, 2, 3);
  auto ident = univariate({0, 1}, 3);
  auto e = jet_compose(ident, {a});
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(e[i], a[i]);

  EXPECT_THROW(jet_compose(outer, {two_t, two_t}), Error);
}

TEST(JetNormT, Examples) {
  auto j = univariate({Rational(1, 4), 1, 1}, 2);
  EXPECT_EQ(jet_norm_T(j), Rational(9, 4));
  EXPECT_EQ(jet_norm_T(Jet<Rational>(1, 3)), 0);
  EXPECT_EQ(jet_norm_T(univariate({Rational(1, 2), Rational(1, 2)}, 1)), 1);
}

TEST(JetSeries, RecurrencesMatchKnownSeries) {
  auto L = JetLayout::get(1, 5);
  auto t = Jet<Rational>::variable(L, 0, 0);
  auto e = jet_exp(t);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(e[k], Rational(1, factorial(k)));
  Jet<Rational> s, c;
  jet_sin_cos(t, s, c);
  EXPECT_EQ(s[3], Rational(-1, 6));
  EXPECT_EQ(c[4], Rational(1, 24));
  auto one_plus = Jet<Rational>::variable(L, 0, 1);
  auto lg = jet_log(one_plus);
  EXPECT_EQ(lg[4], Rational(-1, 4));
  auto q = jet_recip(one_plus);
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(q[k], k % 2 ? -1 : 1);
}

TEST(JetIo, CanonicalJsonRoundTrip) {
  Jet<Rational> j(2, 2);
  j.set({0, 1}, Rational(-1, 3));
  j.set({1, 0}, 2);
  auto js = jet_to_json(j);
  EXPECT_EQ(js.dump(), R"({"coeffs":[[[0,1],"-1","3"],[[1,0],"2","1"]],"nvars":2,"order":2})");
  auto back = jet_from_json(js);
  for (size_t i = 0; i < j.size(); ++i) EXPECT_EQ(back[i], j[i]);
}

TEST(BoundNorm, Examples) {
  auto f = ExprFn::parse("exp(x-1)", unit_box(1));
  auto nb = bound_norm(f, unit_box(1), 3, NormKind::R);
  EXPECT_TRUE(nb.certified);
  EXPECT_GE(nb.value, 1);
  EXPECT_LE(nb.value, 1 + Rational(1, 1 << 20));

  auto c = ExprFn::parse("-3/8", unit_box(1));
  EXPECT_EQ(bound_norm(c, unit_box(1), 4, NormKind::R).value, Rational(3, 8));

  auto x = ExprFn::parse("x", unit_box(1));
  auto tb = bound_norm(x, unit_box(1), 2, NormKind::TR);
  EXPECT_GE(tb.value, 2);
  EXPECT_LE(tb.value, 2 + Rational(1, 1 << 20));
}

TEST(BoundNorm, DomainViolation) {
  auto f = ExprFn::parse("log(x+1)", unit_box(1));
  Box bad{{Rational(-2), Rational(0)}};
  EXPECT_THROW(bound_norm(std::vector<Expr>{f.tree()}, bad, 2, NormKind::R), Error);
}
