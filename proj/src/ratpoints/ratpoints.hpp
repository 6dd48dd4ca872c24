#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fnexpr/eval.hpp"

namespace pfc {

struct RationalPoint {
  std::vector<Rational> coords;

  RationalPoint() = default;
  explicit RationalPoint(std::vector<Rational> c);
  size_t dim() const { return coords.size(); }
  bool operator==(const RationalPoint& o) const { return coords == o.coords; }
  bool operator<(const RationalPoint& o) const;
};

struct HeightBound {
  uint64_t H = 1;
  int g = 1;
};

// Largest height over the coordinates (an empty point has height 1).
BigInt height(const RationalPoint& p);

// Ascending stream of the rationals in [lo, hi] with height <= H, each once.
class RationalEnumerator {
 public:
  RationalEnumerator(const RInterval& interval, uint64_t H);
  std::optional<Rational> next();

 private:
  bool advance();

  int64_t n_;
  Rational hi_;
  // consecutive Farey neighbours a/b < c/d of order n_, c/d is the next candidate
  int64_t a_ = 0, b_ = 1, c_ = 0, d_ = 1;
  bool done_ = false;
};

std::vector<Rational> enumerate_rationals(const RInterval& interval, uint64_t H);

struct Membership {
  enum Kind { Member, NonMember, Unknown } kind = Unknown;
  Rational value;              // Member: f(p); Unknown: the last target tried
  mpfr_prec_t precision = 0;   // precision at which the decision was made
};

// Decides whether f(p) is a rational of height <= H. NonMember results are
// certified: either the registry produced the exact value, or an enclosure
// contains no rational of height <= H.
Membership classify_value(const ExprFn& f, const std::vector<Rational>& p, uint64_t H,
                          mpfr_prec_t max_precision = 4096);

struct UnknownPoint {
  std::vector<Rational> args;
  Rational target;
  mpfr_prec_t precision = 0;
};

struct OracleResult {
  std::vector<RationalPoint> members;  // graph points (args..., f(args)), sorted
  std::vector<UnknownPoint> unknowns;
  size_t candidates = 0;
};

// All graph points over `box` with every coordinate of height <= bound.H.
OracleResult oracle_count(const ExprFn& f, const Box& box, const HeightBound& bound,
                          mpfr_prec_t max_precision = 4096);

}  // namespace pfc
