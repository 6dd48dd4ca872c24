#pragma once

#include <vector>

#include "jetcalc/layout.hpp"
#include "jetcalc/polynomial.hpp"
#include "ratpoints/ratpoints.hpp"

namespace pfc {

// All exponents alpha in nvars variables with |alpha| <= degree, ordered by
// total degree and, within a degree, by decreasing exponent of the first
// variable (then the second, ...). For (x, y), d = 2: 1, x, y, x^2, xy, y^2.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  size_t size() const { return monos_.size(); }
  const MultiIndex& operator[](size_t i) const { return monos_[i]; }
  const std::vector<MultiIndex>& monomials() const { return monos_; }

  std::vector<Rational> evaluate(const std::vector<Rational>& p) const;
  // prod_alpha prod_i s_i^{alpha_i}: determinant of the change of basis
  // induced by x_i = c_i + s_i u_i.
  Rational scaling_determinant(const std::vector<Rational>& s) const;

 private:
  int nvars_;
  int degree_;
  std::vector<MultiIndex> monos_;
};

// Graded exponents of `nvars` variables in the same order, first `count`.
std::vector<MultiIndex> graded_exponents(int nvars, size_t count);

Rational determinant(std::vector<std::vector<Rational>> rows);

// det(p_i^alpha_j), exact; fraction-free elimination on the integer matrix
// obtained by clearing row denominators.
Rational interp_determinant(const std::vector<RationalPoint>& points, const MonomialBasis& basis);

struct KernelResult {
  size_t rank = 0;
  std::vector<size_t> pivots;
  // basis of the right kernel, one vector per free column (ascending)
  std::vector<std::vector<Rational>> kernel;
};

KernelResult rational_kernel(const std::vector<std::vector<Rational>>& rows, size_t ncols);

// Integer multiple of v with coprime entries (the zero vector is returned as is).
std::vector<BigInt> primitive_integer_vector(const std::vector<Rational>& v);

struct Thresholds {
  Rational dichotomy;     // H^{-d mu}
  Rational perturbation;  // (1/2) H^{-d mu} / (d (mu + 2)!)
  Rational liouville;     // (d^{m+1} N H^{d(m+1)})^{-g}
};

Thresholds thresholds(const BigInt& H, int d, size_t mu, int m, int g, const BigInt& N);

}  // namespace pfc
