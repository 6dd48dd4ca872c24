#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detcount/basis.hpp"
#include "paramcover/atlas.hpp"

namespace pfc {

// What analytic_bound needs to know about a chart psi: [0,1]^m -> R^{m+1}.
struct AnalyticChart {
  int m = 1;
  int r = 1;
  Rational cert = 1;  // every |D^beta psi_i| <= cert for |beta| <= r
  // Components as polynomials in the chart coordinates, when they are.
  std::optional<std::vector<Polynomial>> polynomial;
};

AnalyticChart analytic_chart(const AffineChart& chart, const std::vector<Expr>& target);

struct AnalyticBound {
  Rational value;           // upper bound on |Delta| over tuples from one subbox
  int taylor_order = 0;     // k achieving the minimum
  bool structural_zero = false;
};

// Upper bound on |det(psi(s_i)^alpha_j)| for s_1..s_mu in any cube of side
// delta: each column is Taylor-expanded to order k <= r around the cube center,
// the determinant expanded multilinearly, and every surviving term bounded by
// Hadamard's inequality. The minimum over k is returned.
AnalyticBound analytic_bound(const AnalyticChart& chart, const MonomialBasis& basis, const Rational& delta);

struct ParameterInput {
  int m = 1;
  HeightBound bound;
  std::string method = "determinant";
  // x_i = c_i + s_i u_i maps the normalized coordinates u to the original ones
  std::vector<Rational> scales;
  // normalized graph function as a polynomial in m variables, when it is one
  std::optional<Polynomial> polynomial;
  Rational cert = Rational(1) + Rational(1, 1 << 20);
  int max_log2_inv_delta = 40;
  int r_max = 16;
  int d_max = 8;
};

struct ParameterChoice {
  int m = 1;
  int r = 1;
  int d = 1;
  size_t mu = 0;
  Rational eps;             // cover / perturbation radius, normalized coordinates
  BigInt N = 1;
  Rational delta = 1;       // subbox side in chart coordinates
  int log2_inv_delta = 0;
  Rational threshold;       // dichotomy threshold, normalized coordinates
  Rational bound;           // analytic bound at delta
  bool structural = false;  // polynomial graph: determinants vanish identically
  BigInt subboxes_per_chart = 1;
  std::vector<std::string> transcript;
};

// Taylor order needed so that mu columns fit into distinct exponents of
// degree < r plus one remainder column: the largest |beta| among the first mu
// graded exponents in m variables.
int required_order(size_t mu, int m);

ParameterChoice choose_parameters(const ParameterInput& in);

}  // namespace pfc
