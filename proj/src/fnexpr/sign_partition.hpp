#pragma once

#include <vector>

#include "fnexpr/eval.hpp"

namespace pfc {

struct SignCell {
  RInterval interval;
  bool degenerate = false;  // point cell or tiny cell isolating a zero
  std::vector<int> signs;   // +1, -1, 0 per tracked function
};

struct SignBudget {
  Rational isolation_width = Rational(1, BigInt(1) << 40);
  int max_depth = 90;
  size_t max_leaves = 200000;
  size_t max_degenerate = 512;
};

// Tracked univariate functions: enclosures of values and first derivatives
// over an interval (a point interval gives point values).
class SignFamily {
 public:
  virtual ~SignFamily() = default;
  virtual size_t size() const = 0;
  virtual void enclose(const Interval& x, std::vector<Interval>& values, std::vector<Interval>& derivs) const = 0;
};

// Expressions in one variable, derivatives taken symbolically.
class ExprSignFamily : public SignFamily {
 public:
  ExprSignFamily(std::vector<Expr> fs, int var = 0);
  size_t size() const override { return fs_.size(); }
  void enclose(const Interval& x, std::vector<Interval>& values, std::vector<Interval>& derivs) const override;

 private:
  std::vector<Expr> fs_, dfs_;
  int var_;
};

std::vector<SignCell> sign_partition(const SignFamily& family, const RInterval& interval,
                                     const SignBudget& budget = {});
std::vector<SignCell> sign_partition(const std::vector<ExprFn>& fs, const RInterval& interval,
                                     const SignBudget& budget = {});

}  // namespace pfc
