#include "jetcalc/polynomial.hpp"

#include <sstream>

#include "numeric/error.hpp"

namespace pfc {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int v) {
  Polynomial p(nvars);
  MultiIndex a(nvars, 0);
  a[v] = 1;
  p.add_term(a, 1);
  return p;
}

void Polynomial::add_term(const MultiIndex& a, const Rational& c) {
  if (static_cast<int>(a.size()) != nvars_) fail(ErrorCode::Dimension, "polynomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int Polynomial::total_degree() const {
  int d = 0;
  for (auto& [a, c] : terms_) {
    int s = 0;
    for (int e : a) s += e;
    d = std::max(d, s);
  }
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (auto& [a, c] : o.terms_) r.add_term(a, -c);
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (nvars_ != o.nvars_) fail(ErrorCode::Dimension, "polynomial arity mismatch");
  Polynomial r(nvars_);
  MultiIndex s(nvars_);
  for (auto& [a, c] : terms_)
    for (auto& [b, d] : o.terms_) {
      for (int v = 0; v < nvars_; ++v) s[v] = a[v] + b[v];
      r.add_term(s, c * d);
    }
  return r;
}

Polynomial Polynomial::scaled(const Rational& q) const {
  Polynomial r(nvars_);
  if (q == 0) return r;
  for (auto& [a, c] : terms_) r.terms_.emplace(a, c * q);
  return r;
}

Polynomial Polynomial::pow(unsigned long n) const {
  Polynomial r = constant(nvars_, 1);
  Polynomial b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Rational Polynomial::eval(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != nvars_) fail(ErrorCode::Dimension, "polynomial arity mismatch");
  Rational s = 0;
  for (auto& [a, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < nvars_; ++v)
      if (a[v]) t *= pow_q(x[v], a[v]);
    s += t;
  }
  return s;
}

Interval Polynomial::eval(const std::vector<Interval>& x) const {
  if (static_cast<int>(x.size()) != nvars_) fail(ErrorCode::Dimension, "polynomial arity mismatch");
  Interval s;
  for (auto& [a, c] : terms_) {
    Interval t(c);
    for (int v = 0; v < nvars_; ++v)
      if (a[v]) t *= pow_int(x[v], a[v]);
    s += t;
  }
  return s;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    Rational mag = abs_q(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    for (int e : a) has_var |= e != 0;
    if (!has_var || mag != 1) {
      os << mag.get_str();
      if (has_var) os << "*";
    }
    bool lead = true;
    for (int v = 0; v < nvars_; ++v) {
      if (!a[v]) continue;
      if (!lead) os << "*";
      lead = false;
      os << (v < static_cast<int>(names.size()) ? names[v] : "x" + std::to_string(v + 1));
      if (a[v] > 1) os << "^" << a[v];
    }
  }
  return os.str();
}

Rational majorant_norm(const Polynomial& p) {
  Rational s = 0;
  for (auto& [a, c] : p.terms()) s += abs_q(c);
  return s;
}

}  // namespace pfc
