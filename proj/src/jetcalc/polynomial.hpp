#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetcalc/layout.hpp"
#include "numeric/interval.hpp"
#include "numeric/rational.hpp"

namespace pfc {

// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  explicit Polynomial(int nvars = 1) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int v);

  int nvars() const { return nvars_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }
  void add_term(const MultiIndex& a, const Rational& c);
  Rational coeff(const MultiIndex& a) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& q) const;
  Polynomial pow(unsigned long n) const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Rational eval(const std::vector<Rational>& x) const;
  Interval eval(const std::vector<Interval>& x) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<MultiIndex, Rational> terms_;
};

// sum |a_alpha|, exact.
Rational majorant_norm(const Polynomial& p);

}  // namespace pfc
