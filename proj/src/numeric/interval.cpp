#include "numeric/interval.hpp"

#include <ostream>

#include "numeric/error.hpp"

namespace pfc {

namespace {

thread_local mpfr_prec_t g_prec = kDefaultPrecision;

struct Scratch {
  mpfr_t v[4];
  mpfr_prec_t prec = 0;
  Scratch() {
    for (auto& x : v) mpfr_init2(x, kDefaultPrecision);
    prec = kDefaultPrecision;
  }
  ~Scratch() {
    for (auto& x : v) mpfr_clear(x);
  }
  void sync() {
    if (prec != g_prec) {
      for (auto& x : v) mpfr_set_prec(x, g_prec);
      prec = g_prec;
    }
  }
};

Scratch& scratch() {
  thread_local Scratch s;
  s.sync();
  return s;
}

void set_rational(mpfr_ptr dst, const Rational& q, mpfr_rnd_t rnd) {
  mpfr_set_q(dst, q.get_mpq_t(), rnd);
}

Rational to_rational(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) fail(ErrorCode::Domain, "unbounded enclosure");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

// [rlo, rhi] = a * b; outputs must not alias inputs.
void mul_into(mpfr_ptr rlo, mpfr_ptr rhi, const Interval& a, const Interval& b) {
  mpfr_srcptr al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
  if (mpfr_sgn(al) >= 0) {
    if (mpfr_sgn(bl) >= 0) {
      mpfr_mul(rlo, al, bl, MPFR_RNDD);
      mpfr_mul(rhi, ah, bh, MPFR_RNDU);
    } else if (mpfr_sgn(bh) <= 0) {
      mpfr_mul(rlo, ah, bl, MPFR_RNDD);
      mpfr_mul(rhi, al, bh, MPFR_RNDU);
    } else {
      mpfr_mul(rlo, ah, bl, MPFR_RNDD);
      mpfr_mul(rhi, ah, bh, MPFR_RNDU);
    }
  } else if (mpfr_sgn(ah) <= 0) {
    if (mpfr_sgn(bl) >= 0) {
      mpfr_mul(rlo, al, bh, MPFR_RNDD);
      mpfr_mul(rhi, ah, bl, MPFR_RNDU);
    } else if (mpfr_sgn(bh) <= 0) {
      mpfr_mul(rlo, ah, bh, MPFR_RNDD);
      mpfr_mul(rhi, al, bl, MPFR_RNDU);
    } else {
      mpfr_mul(rlo, al, bh, MPFR_RNDD);
      mpfr_mul(rhi, al, bl, MPFR_RNDU);
    }
  } else {
    if (mpfr_sgn(bl) >= 0) {
      mpfr_mul(rlo, al, bh, MPFR_RNDD);
      mpfr_mul(rhi, ah, bh, MPFR_RNDU);
    } else if (mpfr_sgn(bh) <= 0) {
      mpfr_mul(rlo, ah, bl, MPFR_RNDD);
      mpfr_mul(rhi, al, bl, MPFR_RNDU);
    } else {
      Scratch& s = scratch();
      mpfr_mul(s.v[0], al, bh, MPFR_RNDD);
      mpfr_mul(s.v[1], ah, bl, MPFR_RNDD);
      mpfr_mul(s.v[2], al, bl, MPFR_RNDU);
      mpfr_mul(s.v[3], ah, bh, MPFR_RNDU);
      mpfr_min(rlo, s.v[0], s.v[1], MPFR_RNDD);
      mpfr_max(rhi, s.v[2], s.v[3], MPFR_RNDU);
    }
  }
  // 0 * inf
  if (mpfr_nan_p(rlo)) mpfr_set_inf(rlo, -1);
  if (mpfr_nan_p(rhi)) mpfr_set_inf(rhi, 1);
}

// Does x contain a point q*pi + 2*k*pi for an integer k? Conservative.
bool hits_phase(const Interval& x, long quarter_num, long quarter_den) {
  Interval phase = Interval::pi() * Interval(Rational(quarter_num, quarter_den));
  Interval two_pi = Interval::pi() * Interval(2L);
  Interval t1 = (Interval(x.lower()) - phase) / two_pi;
  Interval t2 = (Interval(x.upper()) - phase) / two_pi;
  BigInt k_lo = ceil_q(t1.lower());
  BigInt k_hi = floor_q(t2.upper());
  return k_lo <= k_hi;
}

}  // namespace

mpfr_prec_t working_precision() { return g_prec; }

PrecisionScope::PrecisionScope(mpfr_prec_t prec) : saved_(g_prec) {
  if (prec < MPFR_PREC_MIN || prec > (1 << 20)) fail(ErrorCode::InvalidArgument, "bad precision");
  g_prec = prec;
}
PrecisionScope::~PrecisionScope() { g_prec = saved_; }

Interval::Interval() {
  mpfr_init2(lo_, g_prec);
  mpfr_init2(hi_, g_prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) {
  mpfr_init2(lo_, g_prec);
  mpfr_init2(hi_, g_prec);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Rational& q) {
  mpfr_init2(lo_, g_prec);
  mpfr_init2(hi_, g_prec);
  set_rational(lo_, q, MPFR_RNDD);
  set_rational(hi_, q, MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "interval with lower > upper");
  mpfr_init2(lo_, g_prec);
  mpfr_init2(hi_, g_prec);
  set_rational(lo_, lo, MPFR_RNDD);
  set_rational(hi_, hi, MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    if (mpfr_get_prec(lo_) < mpfr_get_prec(o.lo_)) mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
    if (mpfr_get_prec(hi_) < mpfr_get_prec(o.hi_)) mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::whole() {
  Interval r;
  mpfr_set_inf(r.lo_, -1);
  mpfr_set_inf(r.hi_, 1);
  return r;
}

Interval Interval::pi() {
  Interval r;
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

void Interval::normalize() {
  if (mpfr_nan_p(lo_)) mpfr_set_inf(lo_, -1);
  if (mpfr_nan_p(hi_)) mpfr_set_inf(hi_, 1);
}

bool Interval::finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
Rational Interval::lower() const { return to_rational(lo_); }
Rational Interval::upper() const { return to_rational(hi_); }
double Interval::lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

Rational Interval::mid() const {
  Rational m = (lower() + upper()) / 2;
  m.canonicalize();
  return m;
}

Rational Interval::width() const { return upper() - lower(); }

Rational Interval::mag() const {
  Rational a = abs_q(lower()), b = abs_q(upper());
  return a > b ? a : b;
}

Rational Interval::mig() const {
  if (contains_zero()) return 0;
  Rational a = abs_q(lower()), b = abs_q(upper());
  return a < b ? a : b;
}

bool Interval::contains(const Rational& q) const {
  if (mpfr_number_p(lo_)) {
    if (lower() > q) return false;
  } else if (mpfr_sgn(lo_) > 0) {
    return false;
  }
  if (mpfr_number_p(hi_)) {
    if (upper() < q) return false;
  } else if (mpfr_sgn(hi_) < 0) {
    return false;
  }
  return true;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::is_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }
bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }
bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::nonneg() const { return mpfr_sgn(lo_) >= 0; }
bool Interval::nonpos() const { return mpfr_sgn(hi_) <= 0; }

bool Interval::subset_of(const Interval& o) const {
  return mpfr_greaterequal_p(lo_, o.lo_) && mpfr_lessequal_p(hi_, o.hi_);
}

std::string Interval::str() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "[%.20Rg, %.20Rg]", lo_, hi_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Interval& Interval::operator+=(const Interval& o) {
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  normalize();
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  Scratch& s = scratch();
  mpfr_sub(s.v[0], lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
  mpfr_set(lo_, s.v[0], MPFR_RNDD);
  normalize();
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  Interval r;
  mul_into(r.lo_mut(), r.hi_mut(), *this, o);
  *this = std::move(r);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  *this *= recip(o);
  return *this;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  if (mpfr_nan_p(r.lo()) || mpfr_nan_p(r.hi())) return Interval::whole();
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_mut(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(r.hi_mut(), a.hi(), b.lo(), MPFR_RNDU);
  if (mpfr_nan_p(r.lo()) || mpfr_nan_p(r.hi())) return Interval::whole();
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  mul_into(r.lo_mut(), r.hi_mut(), a, b);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) { return a * recip(b); }

Interval operator-(const Interval& a) {
  Interval r;
  mpfr_neg(r.lo_mut(), a.hi(), MPFR_RNDD);
  mpfr_neg(r.hi_mut(), a.lo(), MPFR_RNDU);
  return r;
}

void mul_add(Interval& acc, const Interval& a, const Interval& b) {
  Scratch& s = scratch();
  mul_into(s.v[0], s.v[1], a, b);
  mpfr_add(acc.lo_mut(), acc.lo(), s.v[0], MPFR_RNDD);
  mpfr_add(acc.hi_mut(), acc.hi(), s.v[1], MPFR_RNDU);
  if (mpfr_nan_p(acc.lo())) mpfr_set_inf(acc.lo_mut(), -1);
  if (mpfr_nan_p(acc.hi())) mpfr_set_inf(acc.hi_mut(), 1);
}

Interval scale(const Interval& a, const Rational& q) { return a * Interval(q); }

Interval hull(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_min(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_max(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_min(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
  if (mpfr_greater_p(r.lo(), r.hi())) return std::nullopt;
  return r;
}

Interval sqr(const Interval& x) {
  Interval r;
  if (mpfr_sgn(x.lo()) >= 0) {
    mpfr_sqr(r.lo_mut(), x.lo(), MPFR_RNDD);
    mpfr_sqr(r.hi_mut(), x.hi(), MPFR_RNDU);
  } else if (mpfr_sgn(x.hi()) <= 0) {
    mpfr_sqr(r.lo_mut(), x.hi(), MPFR_RNDD);
    mpfr_sqr(r.hi_mut(), x.lo(), MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_mut(), 1);
    Scratch& s = scratch();
    mpfr_sqr(s.v[0], x.lo(), MPFR_RNDU);
    mpfr_sqr(s.v[1], x.hi(), MPFR_RNDU);
    mpfr_max(r.hi_mut(), s.v[0], s.v[1], MPFR_RNDU);
  }
  return r;
}

Interval abs(const Interval& x) {
  if (x.nonneg()) return x;
  if (x.nonpos()) return -x;
  Interval r;
  mpfr_set_zero(r.lo_mut(), 1);
  Scratch& s = scratch();
  mpfr_neg(s.v[0], x.lo(), MPFR_RNDU);
  mpfr_max(r.hi_mut(), s.v[0], x.hi(), MPFR_RNDU);
  return r;
}

Interval max_abs(const Interval& x) { return abs(x); }

Interval recip(const Interval& x) {
  if (x.contains_zero()) fail(ErrorCode::Domain, "division by an interval containing zero");
  Interval r;
  mpfr_ui_div(r.lo_mut(), 1, x.hi(), MPFR_RNDD);
  mpfr_ui_div(r.hi_mut(), 1, x.lo(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r;
  mpfr_exp(r.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_exp(r.hi_mut(), x.hi(), MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (!x.positive()) fail(ErrorCode::Domain, "log of an interval not contained in (0, inf)");
  Interval r;
  mpfr_log(r.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_log(r.hi_mut(), x.hi(), MPFR_RNDU);
  return r;
}

namespace {

// Shared body for sin and cos: endpoint values plus extremum detection.
// Maxima of the function sit at max_q*pi + 2k*pi, minima at min_q*pi + 2k*pi
// (max_q, min_q given as p/2).
Interval periodic(const Interval& x, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), long max_half,
                  long min_half) {
  if (!x.finite()) {
    Interval r(-1L);
    mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    return r;
  }
  Rational w = x.width();
  if (w >= 7) {
    Interval r(-1L);
    mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    return r;
  }
  Interval r;
  Scratch& s = scratch();
  fn(s.v[0], x.lo(), MPFR_RNDD);
  fn(s.v[1], x.hi(), MPFR_RNDD);
  fn(s.v[2], x.lo(), MPFR_RNDU);
  fn(s.v[3], x.hi(), MPFR_RNDU);
  mpfr_min(r.lo_mut(), s.v[0], s.v[1], MPFR_RNDD);
  mpfr_max(r.hi_mut(), s.v[2], s.v[3], MPFR_RNDU);
  if (!x.is_point()) {
    if (hits_phase(x, max_half, 2)) mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
    if (hits_phase(x, min_half, 2)) mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
  }
  if (mpfr_cmp_si(r.hi(), 1) > 0) mpfr_set_si(r.hi_mut(), 1, MPFR_RNDU);
  if (mpfr_cmp_si(r.lo(), -1) < 0) mpfr_set_si(r.lo_mut(), -1, MPFR_RNDD);
  return r;
}

}  // namespace

Interval sin(const Interval& x) { return periodic(x, mpfr_sin, 1, 3); }
Interval cos(const Interval& x) { return periodic(x, mpfr_cos, 0, 2); }

Interval pow_int(const Interval& x, long n) {
  if (n == 0) return Interval(1L);
  if (n < 0) return recip(pow_int(x, -n));
  if (n == 1) return x;
  Interval r;
  if (n % 2 == 1) {
    mpfr_pow_ui(r.lo_mut(), x.lo(), static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_pow_ui(r.hi_mut(), x.hi(), static_cast<unsigned long>(n), MPFR_RNDU);
    return r;
  }
  Interval a = abs(x);
  mpfr_pow_ui(r.lo_mut(), a.lo(), static_cast<unsigned long>(n), MPFR_RNDD);
  mpfr_pow_ui(r.hi_mut(), a.hi(), static_cast<unsigned long>(n), MPFR_RNDU);
  return r;
}

// x^y = exp(y log x) is monotone in each argument, so corners suffice.
Interval pow(const Interval& x, const Interval& y) {
  if (x.is_zero() && y.positive()) return Interval();
  if (!x.positive()) fail(ErrorCode::Domain, "pow with a base not contained in (0, inf)");
  Interval r;
  Scratch& s = scratch();
  mpfr_pow(s.v[0], x.lo(), y.lo(), MPFR_RNDD);
  mpfr_pow(s.v[1], x.lo(), y.hi(), MPFR_RNDD);
  mpfr_pow(s.v[2], x.hi(), y.lo(), MPFR_RNDD);
  mpfr_pow(s.v[3], x.hi(), y.hi(), MPFR_RNDD);
  mpfr_min(r.lo_mut(), s.v[0], s.v[1], MPFR_RNDD);
  mpfr_min(r.lo_mut(), r.lo(), s.v[2], MPFR_RNDD);
  mpfr_min(r.lo_mut(), r.lo(), s.v[3], MPFR_RNDD);
  mpfr_pow(s.v[0], x.lo(), y.lo(), MPFR_RNDU);
  mpfr_pow(s.v[1], x.lo(), y.hi(), MPFR_RNDU);
  mpfr_pow(s.v[2], x.hi(), y.lo(), MPFR_RNDU);
  mpfr_pow(s.v[3], x.hi(), y.hi(), MPFR_RNDU);
  mpfr_max(r.hi_mut(), s.v[0], s.v[1], MPFR_RNDU);
  mpfr_max(r.hi_mut(), r.hi(), s.v[2], MPFR_RNDU);
  mpfr_max(r.hi_mut(), r.hi(), s.v[3], MPFR_RNDU);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << x.str(); }

}  // namespace pfc
