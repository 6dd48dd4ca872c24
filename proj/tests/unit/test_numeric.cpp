#include <gtest/gtest.h>

#include "numeric/error.hpp"
#include "numeric/interval.hpp"
#include "numeric/rational.hpp"

using namespace pfc;

TEST(Rational, ParsesIntegersFractionsAndDyadics) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("~0.5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("~0.1"), Rational(0.1));
}

TEST(Rational, RejectsPlainDecimals) {
  try {
    parse_rational("0.5");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos);
  }
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("1/x"), Error);
}

TEST(Rational, HeightAndFloors) {
  EXPECT_EQ(height(Rational(2, 3)), 3);
  EXPECT_EQ(height(Rational(-7, 3)), 7);
  EXPECT_EQ(height(Rational(0)), 1);
  EXPECT_EQ(floor_q(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_q(Rational(-1, 2)), 0);
  EXPECT_EQ(floor_dyadic(Rational(1, 3), 4), Rational(5, 16));
  EXPECT_EQ(ceil_dyadic(Rational(1, 3), 4), Rational(3, 8));
  EXPECT_EQ(ceil_log2(Rational(5)), 3);
  EXPECT_EQ(ceil_log2(Rational(4)), 2);
}

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(simplest_between(Rational(3, 10), Rational(4, 10)), Rational(1, 3));
  EXPECT_EQ(simplest_between(Rational(7, 5), Rational(3, 2)), Rational(3, 2));
  EXPECT_EQ(simplest_between(Rational(-2, 3), Rational(-3, 5)), Rational(-2, 3));
  EXPECT_EQ(simplest_between(Rational(-1), Rational(1)), Rational(0));
}

TEST(Interval, ArithmeticEnclosesExactResults) {
  Interval a(Rational(1, 3)), b(Rational(2, 7));
  EXPECT_TRUE((a + b).contains(Rational(13, 21)));
  EXPECT_TRUE((a - b).contains(Rational(1, 21)));
  EXPECT_TRUE((a * b).contains(Rational(2, 21)));
  EXPECT_TRUE((a / b).contains(Rational(7, 6)));
  Interval c(Rational(-1), Rational(2));
  Interval sq = sqr(c);
  EXPECT_EQ(sq.lower(), 0);
  EXPECT_EQ(sq.upper(), 4);
  EXPECT_THROW(recip(c), Error);
}

TEST(Interval, Transcendentals) {
  Interval e = exp(Interval(Rational(0)));
  EXPECT_EQ(e.lower(), 1);
  EXPECT_EQ(e.upper(), 1);
  Interval s = sin(Interval(Rational(0), Rational(4)));
  EXPECT_EQ(s.upper(), 1);
  EXPECT_GT(s.lower(), Rational(-1));
  EXPECT_LT(s.lower(), Rational(-75, 100));
  Interval c = cos(Interval(Rational(-1), Rational(1)));
  EXPECT_EQ(c.upper(), 1);
  Interval p = pow(Interval(2L), Interval(Rational(1), Rational(2)));
  EXPECT_EQ(p.lower(), 2);
  EXPECT_EQ(p.upper(), 4);
  EXPECT_THROW(log(Interval(Rational(-1), Rational(1))), Error);
}

TEST(Interval, PrecisionScopeControlsWidth) {
  Rational w128, w256;
  {
    PrecisionScope s(128);
    w128 = exp(Interval(Rational(1, 3))).width();
  }
  {
    PrecisionScope s(256);
    w256 = exp(Interval(Rational(1, 3))).width();
  }
  EXPECT_GT(w128, w256);
  EXPECT_LE(w128, Rational(1, BigInt(1) << 120));
}
