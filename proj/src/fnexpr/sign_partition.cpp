#include "fnexpr/sign_partition.hpp"

#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"

namespace pfc {

ExprSignFamily::ExprSignFamily(std::vector<Expr> fs, int var) : fs_(std::move(fs)), var_(var) {
  for (Expr f : fs_) dfs_.push_back(derive(f, var_));
}

void ExprSignFamily::enclose(const Interval& x, std::vector<Interval>& values,
                             std::vector<Interval>& derivs) const {
  std::vector<Interval> box(static_cast<size_t>(var_) + 1);
  box[var_] = x;
  IntervalEvaluator ev(box);
  values.clear();
  derivs.clear();
  std::vector<Interval> mbox(box.size());
  Rational m = x.mid();
  mbox[var_] = Interval(m);
  IntervalEvaluator mid_ev(mbox);
  for (size_t i = 0; i < fs_.size(); ++i) {
    Interval v = ev.eval(fs_[i]);
    Interval d = ev.eval(dfs_[i]);
    if (!x.is_point()) {
      // mean value form
      Interval mv = mid_ev.eval(fs_[i]) + d * (x - Interval(m));
      if (auto both = intersect(v, mv)) v = *both;
    }
    values.push_back(v);
    derivs.push_back(d);
  }
}

namespace {

struct Leaf {
  Rational lo, hi;
  bool good;
  std::vector<int> signs;
};

class Partitioner {
 public:
  Partitioner(const SignFamily& fam, const SignBudget& budget) : fam_(fam), budget_(budget) {}

  void run(const Rational& lo, const Rational& hi, int depth) {
    std::vector<int> signs;
    bool all = decide(lo, hi, signs);
    if (all) {
      leaves_.push_back({lo, hi, true, signs});
      return;
    }
    if (hi - lo <= budget_.isolation_width) {
      leaves_.push_back({lo, hi, false, signs});
      return;
    }
    if (depth >= budget_.max_depth || leaves_.size() >= budget_.max_leaves)
      fail(ErrorCode::Budget, "sign_partition: undecided subinterval [" + lo.get_str() + ", " + hi.get_str() +
                                  "] (possible non-isolated zero)");
    Rational m = (lo + hi) / 2;
    m.canonicalize();
    run(lo, m, depth + 1);
    run(m, hi, depth + 1);
  }

  std::vector<int> point_signs(const Rational& p) const {
    std::vector<Interval> v, d;
    fam_.enclose(Interval(p), v, d);
    std::vector<int> s(v.size());
    for (size_t i = 0; i < v.size(); ++i) s[i] = v[i].positive() ? 1 : (v[i].negative() ? -1 : 0);
    return s;
  }

  const std::vector<Leaf>& leaves() const { return leaves_; }

 private:
  // Signs on the open interval (lo, hi); undecided entries are 0.
  bool decide(const Rational& lo, const Rational& hi, std::vector<int>& signs) {
    std::vector<Interval> v, d;
    fam_.enclose(Interval(lo, hi), v, d);
    size_t n = v.size();
    signs.assign(n, 0);
    bool all = true;
    std::vector<Interval> vlo, vhi, dd;
    bool have_ends = false;
    for (size_t i = 0; i < n; ++i) {
      if (v[i].positive()) {
        signs[i] = 1;
        continue;
      }
      if (v[i].negative()) {
        signs[i] = -1;
        continue;
      }
      if (v[i].is_zero()) continue;
      if (!d[i].contains_zero()) {
        if (!have_ends) {
          fam_.enclose(Interval(lo), vlo, dd);
          fam_.enclose(Interval(hi), vhi, dd);
          have_ends = true;
        }
        bool inc = d[i].positive();
        if (inc && vlo[i].nonneg()) {
          signs[i] = 1;
          continue;
        }
        if (inc && vhi[i].nonpos()) {
          signs[i] = -1;
          continue;
        }
        if (!inc && vlo[i].nonpos()) {
          signs[i] = -1;
          continue;
        }
        if (!inc && vhi[i].nonneg()) {
          signs[i] = 1;
          continue;
        }
      }
      all = false;
    }
    return all;
  }

  const SignFamily& fam_;
  const SignBudget& budget_;
  std::vector<Leaf> leaves_;
};

}  // namespace

std::vector<SignCell> sign_partition(const SignFamily& family, const RInterval& interval, const SignBudget& budget) {
  if (interval.lo > interval.hi) fail(ErrorCode::InvalidArgument, "sign_partition: empty interval");
  if (interval.lo == interval.hi) {
    Partitioner p(family, budget);
    return {SignCell{interval, true, p.point_signs(interval.lo)}};
  }
  Partitioner part(family, budget);
  part.run(interval.lo, interval.hi, 0);
  const auto& leaves = part.leaves();

  // Assemble: interior boundaries where some function may vanish become point
  // cells, equal-sign neighbours merge, degenerate runs merge.
  std::vector<SignCell> raw;
  for (size_t k = 0; k < leaves.size(); ++k) {
    const Leaf& lf = leaves[k];
    if (k > 0) {
      std::vector<int> ps = part.point_signs(lf.lo);
      bool vanish = false;
      for (int s : ps) vanish |= s == 0;
      if (vanish) raw.push_back({{lf.lo, lf.lo}, true, ps});
    }
    raw.push_back({{lf.lo, lf.hi}, !lf.good, lf.signs});
  }
  std::vector<SignCell> out;
  for (auto& c : raw) {
    if (!out.empty()) {
      SignCell& last = out.back();
      bool both_good = !last.degenerate && !c.degenerate;
      bool both_deg = last.degenerate && c.degenerate;
      if ((both_good && last.signs == c.signs) || both_deg) {
        last.interval.hi = c.interval.hi;
        if (both_deg)
          for (size_t i = 0; i < c.signs.size(); ++i)
            if (last.signs[i] != c.signs[i]) last.signs[i] = 0;
        continue;
      }
    }
    out.push_back(c);
  }
  size_t ndeg = 0;
  for (auto& c : out) {
    if (!c.degenerate) continue;
    ++ndeg;
    if (c.interval.width() > 64 * budget.isolation_width)
      fail(ErrorCode::Budget, "sign_partition: undecided subinterval [" + c.interval.lo.get_str() + ", " +
                                  c.interval.hi.get_str() + "] (possible non-isolated zero)");
  }
  if (ndeg > budget.max_degenerate) fail(ErrorCode::Budget, "sign_partition: too many degenerate cells");
  return out;
}

std::vector<SignCell> sign_partition(const std::vector<ExprFn>& fs, const RInterval& interval,
                                     const SignBudget& budget) {
  std::vector<Expr> trees;
  for (auto& f : fs) {
    if (f.arity() != 1) fail(ErrorCode::Dimension, "sign_partition expects univariate functions");
    if (interval.lo < f.domain()[0].lo || interval.hi > f.domain()[0].hi)
      fail(ErrorCode::Domain, "sign_partition interval outside the function's domain");
    trees.push_back(f.tree());
  }
  return sign_partition(ExprSignFamily(trees), interval, budget);
}

}  // namespace pfc
