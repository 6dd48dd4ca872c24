#pragma once

#include <optional>
#include <vector>

#include "fnexpr/eval.hpp"
#include "jetcalc/jet.hpp"

namespace pfc {

enum class NormKind { Sup, R, TR };
const char* norm_kind_name(NormKind k);

struct NormBound {
  Rational value;  // upper bound
  NormKind kind = NormKind::R;
  int order = 0;
  bool certified = true;
  Rational sampled;  // lower estimate from point jets
  size_t boxes = 0;
};

struct NormOptions {
  Rational slack = Rational(1, 1 << 20);
  size_t max_boxes = 2048;
  // Stop as soon as the bound is at most this value.
  std::optional<Rational> target;
};

// Norm of a single jet: max alpha! |c_alpha| (R), sum |c_alpha| (TR), |c_0| (Sup).
Rational jet_norm(const Jet<Interval>& j, NormKind kind);
Rational jet_norm_lower(const Jet<Interval>& j, NormKind kind);

// Certified bound of max over components of the chosen norm on the box, by
// interval Taylor jets over an adaptive subdivision.
NormBound bound_norm(const std::vector<Expr>& fs, const Box& box, int r, NormKind kind,
                     const NormOptions& opts = {});
NormBound bound_norm(const ExprFn& f, const Box& box, int r, NormKind kind, const NormOptions& opts = {});

}  // namespace pfc
