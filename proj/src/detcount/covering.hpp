#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detcount/basis.hpp"
#include "fnexpr/eval.hpp"

namespace pfc {

enum class Provenance { ExactKernel, DeterminantCertified, SiegelConstructed, GraphIdeal };
std::string provenance_name(Provenance p);

struct CoveringPolynomial {
  MonomialBasis basis{1, 0};
  std::vector<BigInt> coeffs;
  BigInt N = 0;  // max |coeff|
  Provenance provenance = Provenance::ExactKernel;

  CoveringPolynomial() = default;
  CoveringPolynomial(MonomialBasis b, std::vector<BigInt> c, Provenance p);

  bool is_zero() const;
  Rational eval(const std::vector<Rational>& p) const;
  Interval eval(const std::vector<Interval>& p) const;
  Polynomial to_polynomial() const;
  // P(x_1, .., x_m, g) as an expression in the first m variables.
  Expr on_graph(Expr g) const;
  std::string str() const;
  // equal up to content and sign
  bool same_hypersurface(const CoveringPolynomial& o) const;
};

// Integer vector of the kernel of the evaluation matrix, for the first free
// monomial column, with content removed and that coefficient positive.
CoveringPolynomial fit_exact_kernel(const std::vector<RationalPoint>& points, const MonomialBasis& basis);

// Chart in original coordinates for the lattice construction: psi maps the
// parameter box into R^{m+1}.
struct SiegelChart {
  std::vector<Expr> psi;
  Box box;
  HeightBound bound;
  int max_taylor = 6;
};

struct SiegelFit {
  CoveringPolynomial P;
  bool certified = false;
  Rational sup_bound;   // certified sup |P o psi| over the box
  Rational liouville;   // R for the reported N
  int conditions = 0;   // Taylor coefficients forced small
  int weight_bits = 0;
};

// LLL on the lattice spanned by (e_alpha, W * scaled Taylor coefficients of
// psi^alpha at the box center). The fit is certified when sup |P o psi| < R/2,
// which by Liouville forces P to vanish at every point of height <= H in
// psi(box).
SiegelFit fit_siegel(const std::vector<RationalPoint>& points, const MonomialBasis& basis, const SiegelChart& chart);

enum class FitMode { ExactKernel, Siegel };

CoveringPolynomial fit_covering_polynomial(const std::vector<RationalPoint>& points, const MonomialBasis& basis,
                                           FitMode mode, const SiegelChart* chart = nullptr);

struct IntersectionResult {
  std::vector<RInterval> isolating;  // each holds exactly one zero; point intervals are exact zeros
  std::vector<Box> undecided;
  bool arc = false;                  // P vanishes identically on the graph
  size_t zero_locus_boxes = 0;       // 2D: final boxes that may meet the zero set
  size_t count_lo = 0;
  std::optional<size_t> count_hi;    // nullopt: unbounded (arc, curve, or undecided)
};

// Zeros of P(x, f(x)) on an interval (1D) or the zero locus of P(x, y, f(x, y))
// on a box (2D). Arcs require a syntactic check: f polynomial and P o graph = 0.
IntersectionResult intersect_with_graph(const ExprFn& f, const CoveringPolynomial& P, const Box& box,
                                        int max_depth = 48);

}  // namespace pfc
