#pragma once

#include "numeric/error.hpp"
#include "numeric/interval.hpp"
#include "numeric/rational.hpp"

namespace pfc {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static Rational from_q(const Rational& q) { return q; }
  static void mul_add(Rational& acc, const Rational& a, const Rational& b) { acc += a * b; }
  static Rational mag(const Rational& a) { return abs_q(a); }
  static bool is_zero(const Rational& a) { return a == 0; }
  static bool excludes_zero(const Rational& a) { return a != 0; }
  static Rational exp(const Rational& a) {
    if (a == 0) return 1;
    throw NotExact("exp of a nonzero rational");
  }
  static Rational log(const Rational& a) {
    if (a == 1) return 0;
    if (a <= 0) fail(ErrorCode::Domain, "log of a nonpositive value");
    throw NotExact("log of a rational other than 1");
  }
  static Rational sin(const Rational& a) {
    if (a == 0) return 0;
    throw NotExact("sin of a nonzero rational");
  }
  static Rational cos(const Rational& a) {
    if (a == 0) return 1;
    throw NotExact("cos of a nonzero rational");
  }
};

template <>
struct ScalarOps<Interval> {
  static Interval from_q(const Rational& q) { return Interval(q); }
  static void mul_add(Interval& acc, const Interval& a, const Interval& b) { pfc::mul_add(acc, a, b); }
  static Rational mag(const Interval& a) { return a.mag(); }
  static bool is_zero(const Interval& a) { return a.is_zero(); }
  static bool excludes_zero(const Interval& a) { return !a.contains_zero(); }
  static Interval exp(const Interval& a) { return pfc::exp(a); }
  static Interval log(const Interval& a) { return pfc::log(a); }
  static Interval sin(const Interval& a) { return pfc::sin(a); }
  static Interval cos(const Interval& a) { return pfc::cos(a); }
};

}  // namespace pfc
