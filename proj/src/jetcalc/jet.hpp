#pragma once

#include <vector>

#include "jetcalc/layout.hpp"
#include "jetcalc/scalar.hpp"

namespace pfc {

// Truncated Taylor polynomial sum_alpha c_alpha t^alpha, |alpha| <= order.
template <class S>
class Jet {
 public:
  using Ops = ScalarOps<S>;

  Jet() = default;
  explicit Jet(JetLayout::Ptr layout) : layout_(std::move(layout)), c_(layout_->size()) {}
  Jet(int nvars, int order) : Jet(JetLayout::get(nvars, order)) {}

  static Jet constant(JetLayout::Ptr layout, const S& v) {
    Jet j(std::move(layout));
    j.c_[0] = v;
    return j;
  }
  // v + t_var
  static Jet variable(JetLayout::Ptr layout, int var, const S& v) {
    Jet j = constant(layout, v);
    if (layout->order() >= 1) j.c_[layout->var_index(var)] = S(1L);
    return j;
  }

  const JetLayout::Ptr& layout() const { return layout_; }
  int nvars() const { return layout_->nvars(); }
  int order() const { return layout_->order(); }
  size_t size() const { return c_.size(); }
  S& operator[](size_t i) { return c_[i]; }
  const S& operator[](size_t i) const { return c_[i]; }
  const std::vector<S>& coeffs() const { return c_; }

  S coeff(const MultiIndex& a) const {
    auto i = layout_->index_of(a);
    return i ? c_[*i] : S();
  }
  void set(const MultiIndex& a, const S& v) {
    auto i = layout_->index_of(a);
    if (!i) fail(ErrorCode::InvalidArgument, "multi-index exceeds jet order");
    c_[*i] = v;
  }

  Jet& operator+=(const Jet& o) {
    check_shape(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_shape(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const S& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  void check_shape(const Jet& o) const {
    if (layout_ != o.layout_) {
      if (!layout_ || !o.layout_ || nvars() != o.nvars())
        fail(ErrorCode::Dimension, "jet nvars mismatch");
      fail(ErrorCode::Dimension, "jet order mismatch");
    }
  }

 private:
  JetLayout::Ptr layout_;
  std::vector<S> c_;
};

template <class S>
Jet<S> operator+(Jet<S> a, const Jet<S>& b) {
  a += b;
  return a;
}
template <class S>
Jet<S> operator-(Jet<S> a, const Jet<S>& b) {
  a -= b;
  return a;
}
template <class S>
Jet<S> operator-(const Jet<S>& a) {
  Jet<S> r(a.layout());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
template <class S>
Jet<S> operator*(Jet<S> a, const S& s) {
  a *= s;
  return a;
}

template <class S>
Jet<S> jet_mul(const Jet<S>& a, const Jet<S>& b) {
  a.check_shape(b);
  const JetLayout& L = *a.layout();
  Jet<S> r(a.layout());
  for (size_t o = 0; o < L.size(); ++o)
    for (auto [i, j] : L.pairs(o)) ScalarOps<S>::mul_add(r[o], a[i], b[j]);
  return r;
}

template <class S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
  return jet_mul(a, b);
}

template <class S>
Jet<S> jet_pow_int(const Jet<S>& a, long n);

// q = a / b via q b = a, solved degree by degree.
template <class S>
Jet<S> jet_div(const Jet<S>& a, const Jet<S>& b) {
  a.check_shape(b);
  if (!ScalarOps<S>::excludes_zero(b[0])) fail(ErrorCode::Domain, "division by a jet with zero constant term");
  const JetLayout& L = *a.layout();
  Jet<S> q(a.layout());
  S inv = S(1L) / b[0];
  for (size_t o = 0; o < L.size(); ++o) {
    S acc = a[o];
    for (auto [i, j] : L.pairs(o)) {
      if (i == 0) continue;
      S t = -b[i];
      ScalarOps<S>::mul_add(acc, t, q[j]);
    }
    q[o] = acc * inv;
  }
  return q;
}

template <class S>
Jet<S> jet_recip(const Jet<S>& b) {
  return jet_div(Jet<S>::constant(b.layout(), S(1L)), b);
}

// Euler operator E = sum t_i d/dt_i applied coefficientwise: c_alpha -> |alpha| c_alpha.
template <class S>
Jet<S> euler(const Jet<S>& v) {
  Jet<S> e(v.layout());
  const JetLayout& L = *v.layout();
  for (size_t i = 1; i < L.size(); ++i) e[i] = v[i] * S(static_cast<long>(L.degree(i)));
  return e;
}

template <class S>
Jet<S> jet_exp(const Jet<S>& v) {
  const JetLayout& L = *v.layout();
  Jet<S> u(v.layout());
  u[0] = ScalarOps<S>::exp(v[0]);
  Jet<S> ev = euler(v);
  for (size_t o = 1; o < L.size(); ++o) {
    S acc;
    for (auto [i, j] : L.pairs(o))
      if (i != 0) ScalarOps<S>::mul_add(acc, ev[i], u[j]);
    u[o] = acc / S(static_cast<long>(L.degree(o)));
  }
  return u;
}

template <class S>
void jet_sin_cos(const Jet<S>& v, Jet<S>& s, Jet<S>& c) {
  const JetLayout& L = *v.layout();
  s = Jet<S>(v.layout());
  c = Jet<S>(v.layout());
  s[0] = ScalarOps<S>::sin(v[0]);
  c[0] = ScalarOps<S>::cos(v[0]);
  Jet<S> ev = euler(v);
  for (size_t o = 1; o < L.size(); ++o) {
    S as, ac;
    for (auto [i, j] : L.pairs(o)) {
      if (i == 0) continue;
      ScalarOps<S>::mul_add(as, ev[i], c[j]);
      ScalarOps<S>::mul_add(ac, ev[i], s[j]);
    }
    S k(static_cast<long>(L.degree(o)));
    s[o] = as / k;
    c[o] = -(ac / k);
  }
}

template <class S>
Jet<S> jet_log(const Jet<S>& v) {
  const JetLayout& L = *v.layout();
  if (!ScalarOps<S>::excludes_zero(v[0])) fail(ErrorCode::Domain, "log of a jet with zero constant term");
  Jet<S> u(v.layout());
  u[0] = ScalarOps<S>::log(v[0]);
  Jet<S> eu(v.layout());
  S inv = S(1L) / v[0];
  for (size_t o = 1; o < L.size(); ++o) {
    S acc;
    for (auto [i, j] : L.pairs(o))
      if (i != 0 && j != 0) ScalarOps<S>::mul_add(acc, eu[i], v[j]);
    S k(static_cast<long>(L.degree(o)));
    u[o] = (v[o] - acc / k) * inv;
    eu[o] = u[o] * k;
  }
  return u;
}

template <class S>
Jet<S> jet_pow_int(const Jet<S>& a, long n) {
  if (n < 0) return jet_recip(jet_pow_int(a, -n));
  Jet<S> result = Jet<S>::constant(a.layout(), S(1L));
  Jet<S> base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : jet_mul(result, base);
      first = false;
    }
    n >>= 1;
    if (n) base = jet_mul(base, base);
  }
  return result;
}

// sum_k coeffs[k] h^k for a jet h with zero constant term.
template <class S>
Jet<S> jet_horner(const std::vector<S>& coeffs, const Jet<S>& h) {
  Jet<S> r = Jet<S>::constant(h.layout(), coeffs.empty() ? S() : coeffs.back());
  for (size_t k = coeffs.size(); k-- > 1;) {
    r = jet_mul(r, h);
    r[0] += coeffs[k - 1];
  }
  return r;
}

// outer(inner_1, ..., inner_n): plain polynomial substitution, truncated.
template <class S>
Jet<S> jet_compose(const Jet<S>& outer, const std::vector<Jet<S>>& inners) {
  if (static_cast<int>(inners.size()) != outer.nvars())
    fail(ErrorCode::Dimension, "jet_compose: arity mismatch");
  if (inners.empty()) fail(ErrorCode::Dimension, "jet_compose: no inner jets");
  const JetLayout::Ptr& m = inners[0].layout();
  for (auto& in : inners) {
    if (in.layout()->nvars() != m->nvars()) fail(ErrorCode::Dimension, "jet_compose: inner nvars mismatch");
    if (in.order() != outer.order()) fail(ErrorCode::Dimension, "jet_compose: order mismatch");
  }
  int r = outer.order();
  std::vector<std::vector<Jet<S>>> powers(inners.size());
  for (size_t v = 0; v < inners.size(); ++v) {
    powers[v].push_back(Jet<S>::constant(m, S(1L)));
    for (int k = 1; k <= r; ++k) powers[v].push_back(jet_mul(powers[v].back(), inners[v]));
  }
  Jet<S> out(m);
  const JetLayout& L = *outer.layout();
  for (size_t i = 0; i < L.size(); ++i) {
    if (ScalarOps<S>::is_zero(outer[i])) continue;
    const MultiIndex& a = L.alpha(i);
    Jet<S> term = Jet<S>::constant(m, outer[i]);
    for (size_t v = 0; v < inners.size(); ++v)
      if (a[v] > 0) term = jet_mul(term, powers[v][a[v]]);
    out += term;
  }
  return out;
}

// Sum of |c_alpha| (upper bound for interval coefficients).
template <class S>
Rational jet_norm_T(const Jet<S>& j) {
  Rational s = 0;
  for (const auto& c : j.coeffs()) s += ScalarOps<S>::mag(c);
  return s;
}

}  // namespace pfc
