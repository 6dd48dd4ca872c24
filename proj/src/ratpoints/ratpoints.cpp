#include "ratpoints/ratpoints.hpp"

#include <algorithm>

#include "numeric/error.hpp"
#include "numeric/parallel.hpp"

namespace pfc {

RationalPoint::RationalPoint(std::vector<Rational> c) : coords(std::move(c)) {
  for (auto& q : coords) q.canonicalize();
}

bool RationalPoint::operator<(const RationalPoint& o) const {
  return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(), o.coords.end());
}

BigInt height(const RationalPoint& p) {
  BigInt h = 1;
  for (auto& q : p.coords) {
    BigInt v = height(q);
    if (v > h) h = v;
  }
  return h;
}

namespace {

constexpr uint64_t kMaxEnumHeight = uint64_t{1} << 31;

int64_t to_i64(const BigInt& z) {
  if (!z.fits_slong_p()) fail(ErrorCode::Internal, "enumerate_rationals: integer overflow");
  return z.get_si();
}

int64_t floor_ratio(const Rational& q) { return to_i64(floor_q(q)); }

// min(z, cap) without converting a huge z
int64_t clamp_steps(const BigInt& z, int64_t cap) {
  if (z >= BigInt(static_cast<long>(cap))) return cap;
  return to_i64(z);
}

Rational frac(int64_t a, int64_t b) {
  Rational q{BigInt(static_cast<long>(a)), BigInt(static_cast<long>(b))};
  q.canonicalize();
  return q;
}

}  // namespace

RationalEnumerator::RationalEnumerator(const RInterval& interval, uint64_t H) {
  if (H < 1) fail(ErrorCode::InvalidArgument, "enumerate_rationals: H must be at least 1");
  if (H > kMaxEnumHeight) fail(ErrorCode::InvalidArgument, "enumerate_rationals: H too large");
  n_ = static_cast<int64_t>(H);
  Rational bound(static_cast<long>(H));
  Rational lo = std::max(interval.lo, Rational(-bound));
  hi_ = std::min(interval.hi, bound);
  if (lo > hi_) {
    done_ = true;
    return;
  }
  int64_t fl = floor_ratio(lo);
  if (lo == Rational(static_cast<long>(fl))) {
    a_ = fl * n_ - 1;
    b_ = n_;
    c_ = fl;
    d_ = 1;
    return;
  }
  // Stern-Brocot descent to the Farey neighbours a/b < lo <= c/d, with the
  // runs of equal moves taken in one step.
  a_ = fl;
  b_ = 1;
  c_ = fl + 1;
  d_ = 1;
  while (b_ + d_ <= n_) {
    Rational m = frac(a_ + c_, b_ + d_);
    if (m < lo) {
      int64_t k = (n_ - b_) / d_;
      Rational gap = Rational(static_cast<long>(c_)) - lo * static_cast<long>(d_);
      if (gap > 0) {
        Rational need = (lo * static_cast<long>(b_) - static_cast<long>(a_)) / gap;
        k = clamp_steps(ceil_q(need) - 1, k);
      }
      a_ += k * c_;
      b_ += k * d_;
    } else {
      int64_t k = (n_ - d_) / b_;
      Rational num = Rational(static_cast<long>(c_)) - lo * static_cast<long>(d_);
      Rational den = lo * static_cast<long>(b_) - static_cast<long>(a_);
      k = clamp_steps(floor_q(num / den), k);
      c_ += k * a_;
      d_ += k * b_;
    }
  }
}

bool RationalEnumerator::advance() {
  int64_t k = (n_ + b_) / d_;
  int64_t e = k * c_ - a_, f = k * d_ - b_;
  a_ = c_;
  b_ = d_;
  c_ = e;
  d_ = f;
  return true;
}

std::optional<Rational> RationalEnumerator::next() {
  while (!done_) {
    Rational q = frac(c_, d_);
    if (q > hi_) {
      done_ = true;
      break;
    }
    bool ok = (c_ < 0 ? -c_ : c_) <= n_;
    advance();
    if (ok) return q;
  }
  return std::nullopt;
}

std::vector<Rational> enumerate_rationals(const RInterval& interval, uint64_t H) {
  std::vector<Rational> out;
  RationalEnumerator en(interval, H);
  while (auto q = en.next()) out.push_back(std::move(*q));
  return out;
}

Membership classify_value(const ExprFn& f, const std::vector<Rational>& p, uint64_t H, mpfr_prec_t max_precision) {
  const BigInt cap(static_cast<unsigned long>(H));
  ExactResult ex = exact_value(f, p);
  if (ex.kind == ExactResult::Exact) {
    if (height(ex.value) <= cap) return {Membership::Member, ex.value, 0};
    return {Membership::NonMember, ex.value, 0};
  }
  mpfr_prec_t prec = 64;
  Rational last;
  while (prec <= max_precision) {
    Rational s;
    {
      PrecisionScope scope(prec);
      Interval enc = eval_point(f.tree(), p);
      s = simplest_between(enc.lower(), enc.upper());
    }
    // the simplest rational of an interval has the smallest height in it
    if (height(s) > cap) return {Membership::NonMember, s, prec};
    ExactResult r = exact_value(f, p, s, max_precision);
    if (r.kind != ExactResult::NotEqual) return {Membership::Unknown, s, r.precision};
    last = s;
    prec = std::max(prec, r.precision);
  }
  return {Membership::Unknown, last, max_precision};
}

OracleResult oracle_count(const ExprFn& f, const Box& box, const HeightBound& bound, mpfr_prec_t max_precision) {
  if (bound.g != 1) fail(ErrorCode::InvalidArgument, "oracle_count: only g = 1 is supported");
  if (static_cast<int>(box.size()) != f.arity()) fail(ErrorCode::Dimension, "oracle_count: box dimension mismatch");
  std::vector<std::vector<Rational>> axes;
  size_t total = 1;
  for (auto& iv : box) {
    axes.push_back(enumerate_rationals(iv, bound.H));
    total *= axes.back().size();
  }
  std::vector<Membership> res(total);
  auto args_of = [&](size_t idx) {
    std::vector<Rational> p(axes.size());
    for (size_t k = axes.size(); k-- > 0;) {
      p[k] = axes[k][idx % axes[k].size()];
      idx /= axes[k].size();
    }
    return p;
  };
  parallel_for(total, [&](size_t i) { res[i] = classify_value(f, args_of(i), bound.H, max_precision); });
  OracleResult out;
  out.candidates = total;
  for (size_t i = 0; i < total; ++i) {
    if (res[i].kind == Membership::NonMember) continue;
    std::vector<Rational> p = args_of(i);
    if (res[i].kind == Membership::Unknown) {
      out.unknowns.push_back({p, res[i].value, res[i].precision});
      continue;
    }
    p.push_back(res[i].value);
    out.members.emplace_back(std::move(p));
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace pfc
