#include <gtest/gtest.h>

#include <chrono>

#include "fnexpr/calculus.hpp"
#include "paramcover/atlas.hpp"
#include "paramcover/atlas_io.hpp"

using namespace pfc;

namespace {

std::vector<Expr> tuple(const char* f) { return graph_tuple(parse_expr(f), 1); }

const Rational kSlackBound = 1 + Rational(1, 1 << 20);

Rational pow2(int k) { return k >= 0 ? Rational(BigInt(1) << k) : Rational(1, BigInt(1) << -k); }

}  // namespace

TEST(CrSubdivide, Examples) {
  auto c = cr_subdivide({0, 1}, 1, Rational(1, 8));
  ASSERT_EQ(c.size(), 4u);
  Rational want[5] = {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(7, 8)};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(c[i].image[0].lo, want[i]);
    EXPECT_EQ(c[i].image[0].hi, want[i + 1]);
  }
  EXPECT_EQ(cr_subdivide({0, 1}, 1, Rational(1, 4)).size(), 2u);
  for (int r : {1, 3, 8}) EXPECT_EQ(cr_subdivide({0, 1}, r, Rational(1, 2) - Rational(1, 1 << 30)).size(), 2u);
  EXPECT_THROW(cr_subdivide({0, 1}, 0, Rational(1, 8)), Error);
  EXPECT_THROW(cr_subdivide({0, 1}, 2, Rational(1, 2)), Error);
}

TEST(CrSubdivide, InvariantsAndCount) {
  for (int r : {1, 2, 4, 8, 16})
    for (int k : {3, 10, 20}) {
      Rational eps = pow2(-k);
      auto cs = cr_subdivide({0, 1}, r, eps);
      double bound = 2 * std::ceil((r + 1) * std::log(1 / (2 * eps.get_d()))) + 2;
      EXPECT_LE(cs.size(), bound);
      EXPECT_EQ(cs.front().image[0].lo, eps);
      EXPECT_EQ(cs.back().image[0].hi, 1 - eps);
      for (size_t i = 0; i < cs.size(); ++i) {
        const RInterval& J = cs[i].image[0];
        Rational dist = std::min(J.lo, Rational(1 - J.hi));
        EXPECT_LE(J.width() * r, dist);
        if (i + 1 < cs.size()) EXPECT_EQ(J.hi, cs[i + 1].image[0].lo);
      }
    }
}

TEST(C1Prepare, Examples) {
  SignBudget b;
  auto p1 = c1_prepare(tuple("x/2"), {0, 1}, b);
  ASSERT_EQ(p1.size(), 1u);
  EXPECT_EQ(p1[0].dominant, 0);

  auto p2 = c1_prepare(tuple("exp(x-1)"), {0, 1}, b);
  ASSERT_EQ(p2.size(), 1u);
  EXPECT_EQ(p2[0].dominant, 0);
  EXPECT_EQ(p2[0].domain, (RInterval{0, 1}));

  auto p3 = c1_prepare(tuple("2*x - x^2"), {0, 1}, b);
  ASSERT_EQ(p3.size(), 2u);
  EXPECT_EQ(p3[0].dominant, 1);
  EXPECT_EQ(p3[0].domain.hi, Rational(1, 2));
  EXPECT_EQ(p3[1].dominant, 0);
  EXPECT_EQ(p3[1].domain.lo, Rational(1, 2));
  for (auto& p : p3) EXPECT_LE(p.cert.value, kSlackBound);

  EXPECT_THROW(c1_prepare({parse_expr("x^2")}, {0, 1}, b), Error);
}

TEST(CertifyChart, Examples) {
  AtlasOptions o;
  auto id = AffineChart::onto(unit_box(1));
  EXPECT_LE(certify_chart(tuple("exp(x-1)"), id, 5, o).value, kSlackBound);
  auto half = AffineChart::onto(Box{{0, Rational(1, 2)}});
  EXPECT_LE(certify_chart({parse_expr("x"), parse_expr("x")}, half, 1, o).value, 1);
  auto steep = certify_chart({parse_expr("x"), parse_expr("x^2")}, AffineChart::onto(Box{{0, 1}}), 2, o);
  EXPECT_FALSE(chart_passes(steep, o));
}

TEST(Atlas1d, IdentityShortcutForConstants) {
  auto a = build_atlas_1d(tuple("1/3"), 4, pow2(-10));
  EXPECT_TRUE(a.identity_shortcut);
  ASSERT_EQ(a.charts.size(), 1u);
  auto rep = verify_cover(a, pow2(-10), 200);
  EXPECT_EQ(rep.failures, 0u);
}

TEST(Atlas1d, ExpPipeline) {
  Rational eps = pow2(-10);
  auto a = build_atlas_1d(tuple("exp(x-1)"), 4, eps);
  EXPECT_FALSE(a.identity_shortcut);
  ASSERT_EQ(a.pieces.size(), 1u);
  EXPECT_FALSE(a.partial);
  EXPECT_EQ(a.charts.size(), cr_subdivide({0, 1}, 4, eps / 2).size());
  EXPECT_LE(recertify(a), kSlackBound);
  EXPECT_LE(a.cover_bound, eps);
  auto rep = verify_cover(a, eps, 10000);
  EXPECT_EQ(rep.failures, 0u);
  EXPECT_LE(rep.max_observed_distance, eps);
}

TEST(Atlas1d, SinPipeline) {
  Rational eps = pow2(-8);
  auto a = build_atlas_1d(tuple("(1 + sin(8*x))/2"), 2, eps);
  EXPECT_FALSE(a.partial);
  EXPECT_GT(a.pieces.size(), 1u);
  EXPECT_LE(recertify(a), kSlackBound);
  auto rep = verify_cover(a, eps, 2000);
  EXPECT_EQ(rep.failures, 0u);
}

TEST(Atlas2d, Examples) {
  Rational eps = pow2(-8);
  auto lin = build_atlas_2d(parse_expr("(x+y)/2"), 3, eps);
  EXPECT_LE(lin.charts.size(), 4u);
  auto e = build_atlas_2d(parse_expr("exp(x+y-2)"), 3, eps);
  EXPECT_LE(e.charts.size(), 4u);
  EXPECT_LE(recertify(e), kSlackBound);

  AtlasOptions no_shortcut;
  no_shortcut.identity_shortcut = false;
  auto t = build_atlas_2d(parse_expr("(2^(x+y) - 1)/3"), 2, pow2(-6), no_shortcut);
  EXPECT_FALSE(t.partial);
  EXPECT_LE(recertify(t), kSlackBound);
  EXPECT_EQ(verify_cover(t, pow2(-6), 10000).failures, 0u);

  auto s = build_atlas_2d(parse_expr("(1 + sin(3*x + 2*y))/2"), 2, pow2(-6));
  EXPECT_FALSE(s.partial);
  EXPECT_GT(s.charts.size(), 1u);
  EXPECT_LE(recertify(s), kSlackBound);
  EXPECT_EQ(verify_cover(s, pow2(-6), 2000).failures, 0u);
  EXPECT_EQ(s.fiber_unstable, 0u);
}

TEST(VerifyCover, DetectsMissingHalf) {
  Atlas a;
  a.target = {parse_expr("x"), parse_expr("x")};
  a.dim = 1;
  a.r = 1;
  C1Piece p;
  p.domain = p.range = {0, 1};
  p.composed = a.target;
  a.pieces.push_back(p);
  auto c = AffineChart::onto(Box{{0, Rational(1, 2)}});
  c.piece = 0;
  a.charts.push_back(c);
  auto rep = verify_cover(a, Rational(1, 8), 64);
  EXPECT_GT(rep.failures, 0u);
  EXPECT_GE(rep.max_observed_distance, Rational(1, 2) - Rational(1, 64) - Rational(1, 1 << 20));
  a.charts[0] = AffineChart::onto(unit_box(1));
  a.charts[0].piece = 0;
  EXPECT_EQ(verify_cover(a, Rational(1, 8), 64).failures, 0u);
}

TEST(AtlasIo, RoundTrip) {
  auto a = build_atlas_1d(tuple("2*x - x^2"), 2, pow2(-6));
  auto js = atlas_to_json(a);
  auto b = atlas_from_json(js);
  EXPECT_EQ(atlas_to_json(b).dump(), js.dump());
  EXPECT_LE(recertify(b), kSlackBound);
}
