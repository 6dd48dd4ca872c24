#pragma once

#include <mpfr.h>

#include <iosfwd>
#include <optional>
#include <string>

#include "numeric/rational.hpp"

namespace pfc {

constexpr mpfr_prec_t kDefaultPrecision = 128;

// Working precision is per thread; every Interval created on the thread uses it.
mpfr_prec_t working_precision();

class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t prec);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

// Closed interval [lo, hi] with MPFR endpoints and outward rounding. Endpoints
// are dyadic, hence exact rationals.
class Interval {
 public:
  Interval();
  explicit Interval(long v);
  explicit Interval(const Rational& q);
  Interval(const Rational& lo, const Rational& hi);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval whole();
  static Interval pi();

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_ptr lo_mut() { return lo_; }
  mpfr_ptr hi_mut() { return hi_; }

  bool finite() const;
  Rational lower() const;
  Rational upper() const;
  double lower_d() const;
  double upper_d() const;
  Rational mid() const;
  Rational width() const;
  // Upper bound on max |x| and lower bound on min |x|.
  Rational mag() const;
  Rational mig() const;

  bool contains(const Rational& q) const;
  bool contains_zero() const;
  bool is_zero() const;
  bool is_point() const;
  bool positive() const;
  bool negative() const;
  bool nonneg() const;
  bool nonpos() const;
  bool subset_of(const Interval& o) const;

  std::string str() const;

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

 private:
  void normalize();
  mpfr_t lo_, hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

// acc += a * b
void mul_add(Interval& acc, const Interval& a, const Interval& b);
Interval scale(const Interval& a, const Rational& q);

Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);

Interval sqr(const Interval& x);
Interval abs(const Interval& x);
Interval recip(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval pow_int(const Interval& x, long n);
Interval pow(const Interval& x, const Interval& y);
Interval max_abs(const Interval& x);  // [mig, mag]

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace pfc
