#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detcount/analytic.hpp"
#include "detcount/covering.hpp"
#include "paramcover/atlas.hpp"
#include "ratpoints/ratpoints.hpp"

namespace pfc {

struct Block {
  enum Kind { Point, Arc } kind = Point;
  RationalPoint point;         // Point
  Box region;                  // Arc: the part of the domain it lies over
  CoveringPolynomial P;        // Arc: vanishes identically on the graph over region
  int closure_degree = 0;
};

struct CountReport {
  uint64_t H = 0;
  int g = 1;
  int m = 1;
  int r = 0;
  int d = 0;
  size_t mu = 0;
  Rational eps;
  Rational delta;
  std::string method;
  size_t count = 0;
  size_t transcendental_count = 0;
  std::vector<RationalPoint> points;
  std::vector<Block> blocks;
  std::vector<UnknownPoint> unknowns;
  size_t candidates = 0;
  size_t n_charts = 0;
  size_t cells = 0;            // occupied subboxes (determinant) or certified boxes (siegel)
  bool certified = false;
  std::vector<std::string> downgrades;
  std::optional<bool> oracle_agreement;
  std::vector<std::string> transcript;
};

enum class CountMethod { Determinant, Siegel, Oracle };
std::string method_name(CountMethod m);
CountMethod parse_method(const std::string& s);

struct CountOptions {
  CountMethod method = CountMethod::Determinant;
  uint64_t oracle_cutoff_curve = 1024;
  uint64_t oracle_cutoff_surface = 32;
  bool cross_check = true;
  mpfr_prec_t max_precision = 4096;
  int siegel_degree = 1;
  int siegel_max_depth = 96;
  int intersect_depth = 48;
  AtlasOptions atlas;
  Rational structural_eps = Rational(1, 1024);
};

CountReport count_rational_points(const ExprFn& f, const HeightBound& bound, const CountOptions& opts = {});

}  // namespace pfc
