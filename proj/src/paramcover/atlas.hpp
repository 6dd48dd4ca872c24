#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnexpr/eval.hpp"
#include "fnexpr/sign_partition.hpp"
#include "jetcalc/norms.hpp"

namespace pfc {

// phi(s) = offset + diag(scale) * s on [0,1]^dim. In 1D atlases the chart
// coordinate is the coordinate of the C^1 piece it belongs to (x for pieces
// dominated by the identity, w = F_k(x) otherwise).
struct AffineChart {
  int dim = 1;
  std::vector<Rational> scale;
  std::vector<Rational> offset;
  Box image;
  NormBound cert;
  int r = 0;
  int piece = -1;

  static AffineChart onto(const Box& image);
  std::vector<Rational> apply(const std::vector<Rational>& s) const;
  // Affine substitution of the chart into functions of the chart coordinate.
  std::vector<Expr> compose(const std::vector<Expr>& fs) const;
};

// Piece of the C^1 preparation: on `domain` component `dominant` has the
// largest |F'|, and `composed` is F o F_dominant^{-1} in the variable w ranging
// over `range`.
struct C1Piece {
  RInterval domain;
  int dominant = 0;
  bool increasing = true;
  RInterval range;
  std::vector<Expr> composed;
  NormBound cert;
};

struct AtlasOptions {
  Rational slack = Rational(1, 1 << 20);
  size_t max_norm_boxes = 4096;
  int max_halvings = 16;
  bool identity_shortcut = true;
  int max_depth_2d = 14;
  SignBudget sign_budget;  // isolation width is derived from eps
};

struct Atlas {
  std::vector<Expr> target;  // components, functions of x (1D) or (x, y) (2D)
  int dim = 1;
  int r = 0;
  Rational eps;
  std::vector<C1Piece> pieces;
  std::vector<AffineChart> charts;
  bool partial = false;
  std::vector<Box> uncovered;

  // diagnostics
  bool identity_shortcut = false;
  size_t sign_cells = 0;
  size_t rejected_charts = 0;
  size_t sign_failures = 0;  // pieces whose sign partition ran out of budget
  Rational max_cert;
  Rational lipschitz;
  Rational e_budget;      // E(beta_1) = e (r + (n-1) e)^{beta_1}, upper bound
  bool within_e_budget = true;
  Rational cover_bound;   // certified bound on the l_inf cover gap (1D)
  size_t fiber_checks = 0;   // 2D: y-fibers whose grid sup of |f_x| was compared
  size_t fiber_unstable = 0;  // ... and did not stabilize under refinement

  // Functions of chart i's coordinate the chart is composed with.
  const std::vector<Expr>& chart_target(size_t i) const;
};

// C^1 preparation of a univariate tuple containing the identity x.
std::vector<C1Piece> c1_prepare(const std::vector<Expr>& F, const RInterval& interval, const SignBudget& budget,
                                const AtlasOptions& opts = {});

// Greedy geometric cover of the eps-shrunk interval (ratio 1 + 1/r from each
// end). Certificates are left empty.
std::vector<AffineChart> cr_subdivide(const RInterval& interval, int r, const Rational& eps);

// Certified bound of ||G o phi||_r for functions G of the chart coordinate.
NormBound certify_chart(const std::vector<Expr>& G, const AffineChart& chart, int r, const AtlasOptions& opts = {});
bool chart_passes(const NormBound& nb, const AtlasOptions& opts = {});

Atlas build_atlas_1d(const std::vector<Expr>& F, int r, const Rational& eps, const AtlasOptions& opts = {});
Atlas build_atlas_2d(Expr f, int r, const Rational& eps, const AtlasOptions& opts = {});

// Graph tuple (x, f) or (x, y, f).
std::vector<Expr> graph_tuple(Expr f, int dim);

struct CoverReport {
  Rational max_observed_distance;
  size_t failures = 0;
  size_t samples = 0;
};

// Samples quasi-random domain points p (Halton sequence starting at `seed`),
// and bounds the l_inf distance from F(p) to the union of chart images.
CoverReport verify_cover(const Atlas& atlas, const Rational& eps, size_t n_samples, uint64_t seed = 0);

// Re-certifies every chart independently; returns the largest bound.
Rational recertify(const Atlas& atlas, const AtlasOptions& opts = {});

}  // namespace pfc
