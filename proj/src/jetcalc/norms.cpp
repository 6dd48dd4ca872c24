#include "jetcalc/norms.hpp"

#include <queue>

#include "numeric/error.hpp"

namespace pfc {

const char* norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::Sup:
      return "sup";
    case NormKind::R:
      return "r-norm";
    case NormKind::TR:
      return "Tr-norm";
  }
  return "?";
}

namespace {

Rational alpha_factorial(const MultiIndex& a) {
  BigInt f = 1;
  for (int e : a) f *= factorial(static_cast<unsigned long>(e));
  return Rational(f);
}

template <class Get>
Rational jet_norm_impl(const Jet<Interval>& j, NormKind kind, Get get) {
  const JetLayout& L = *j.layout();
  Rational best = 0;
  if (kind == NormKind::Sup) return get(j[0]);
  for (size_t i = 0; i < L.size(); ++i) {
    Rational m = get(j[i]);
    if (kind == NormKind::TR) {
      best += m;
    } else {
      m *= alpha_factorial(L.alpha(i));
      if (m > best) best = m;
    }
  }
  return best;
}

struct Leaf {
  std::vector<Interval> box;
  Rational upper;
  bool operator<(const Leaf& o) const { return upper < o.upper; }
};

// For each coefficient alpha of the order-r layout, the indices of alpha + e_v
// in the order-(r+1) layout.
struct ShiftTable {
  std::vector<std::vector<size_t>> next;
  ShiftTable(int nvars, int r) {
    auto small = JetLayout::get(nvars, r), big = JetLayout::get(nvars, r + 1);
    next.resize(small->size());
    for (size_t i = 0; i < small->size(); ++i)
      for (int v = 0; v < nvars; ++v) {
        MultiIndex a = small->alpha(i);
        ++a[static_cast<size_t>(v)];
        next[i].push_back(*big->index_of(a));
      }
  }
};

// Coefficient enclosures over the box, intersected with the mean-value form
// c(X) in c(m) + sum_v (alpha_v + 1) c_{alpha + e_v}(X) (X_v - m_v).
Rational box_bound(const std::vector<Expr>& fs, const std::vector<Interval>& box, int r, NormKind kind,
                   const ShiftTable& shifts) {
  int order = kind == NormKind::Sup ? 0 : r;
  JetEvaluator ev(box_seeds(box, order + 1));
  std::vector<Interval> mid, off;
  for (auto& b : box) {
    mid.emplace_back(b.mid());
    off.push_back(b - mid.back());
  }
  JetEvaluator evm(box_seeds(mid, order));
  auto L = JetLayout::get(static_cast<int>(box.size()), order);
  Rational best = 0;
  for (Expr f : fs) {
    Jet<Interval> big = ev.eval(f);
    Jet<Interval> at_mid = evm.eval(f);
    Jet<Interval> j(L);
    for (size_t i = 0; i < L->size(); ++i) {
      Interval mv = at_mid[i];
      const MultiIndex& a = L->alpha(i);
      for (size_t v = 0; v < box.size(); ++v) mul_add(mv, big[shifts.next[i][v]] * Interval(long(a[v] + 1)), off[v]);
      Interval c = big[i];
      if (auto both = intersect(c, mv)) c = *both;
      j[i] = c;
    }
    Rational v = jet_norm(j, kind);
    if (v > best) best = v;
  }
  return best;
}

Rational center_estimate(const std::vector<Expr>& fs, const std::vector<Interval>& box, int r, NormKind kind) {
  std::vector<Interval> pt;
  for (auto& b : box) pt.emplace_back(b.mid());
  int order = kind == NormKind::Sup ? 0 : r;
  JetEvaluator ev(box_seeds(pt, order));
  Rational best = 0;
  for (Expr f : fs) {
    Rational v = jet_norm_lower(ev.eval(f), kind);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace

Rational jet_norm(const Jet<Interval>& j, NormKind kind) {
  return jet_norm_impl(j, kind, [](const Interval& v) { return v.mag(); });
}

Rational jet_norm_lower(const Jet<Interval>& j, NormKind kind) {
  return jet_norm_impl(j, kind, [](const Interval& v) { return v.mig(); });
}

NormBound bound_norm(const std::vector<Expr>& fs, const Box& box, int r, NormKind kind, const NormOptions& opts) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "negative norm order");
  if (fs.empty()) fail(ErrorCode::InvalidArgument, "bound_norm of an empty tuple");
  NormBound nb;
  nb.kind = kind;
  nb.order = r;
  std::priority_queue<Leaf> queue;
  std::vector<Interval> root = to_intervals(box);
  ShiftTable shifts(static_cast<int>(box.size()), kind == NormKind::Sup ? 0 : r);
  Rational sampled = center_estimate(fs, root, r, kind);
  queue.push({root, box_bound(fs, root, r, kind, shifts)});
  size_t boxes = 1;
  for (;;) {
    const Leaf& top = queue.top();
    Rational upper = top.upper;
    bool met_target = opts.target && upper <= *opts.target;
    bool tight = upper - sampled <= opts.slack;
    bool hopeless = opts.target && sampled > *opts.target;
    if (met_target || tight || hopeless || boxes >= opts.max_boxes) break;
    Leaf leaf = top;
    queue.pop();
    size_t dim = 0;
    Rational widest = -1;
    for (size_t i = 0; i < leaf.box.size(); ++i) {
      Rational w = leaf.box[i].width();
      if (w > widest) {
        widest = w;
        dim = i;
      }
    }
    if (widest == 0) {
      queue.push(leaf);
      break;
    }
    Rational m = leaf.box[dim].mid();
    for (int side = 0; side < 2; ++side) {
      std::vector<Interval> child = leaf.box;
      child[dim] = side == 0 ? Interval(leaf.box[dim].lower(), m) : Interval(m, leaf.box[dim].upper());
      Rational est = center_estimate(fs, child, r, kind);
      if (est > sampled) sampled = est;
      queue.push({child, box_bound(fs, child, r, kind, shifts)});
      ++boxes;
    }
  }
  nb.value = queue.top().upper;
  nb.sampled = sampled;
  nb.boxes = boxes;
  nb.certified = true;
  return nb;
}

NormBound bound_norm(const ExprFn& f, const Box& box, int r, NormKind kind, const NormOptions& opts) {
  if (box.size() != f.domain().size()) fail(ErrorCode::Dimension, "box dimension differs from the domain");
  return bound_norm(std::vector<Expr>{f.tree()}, box, r, kind, opts);
}

}  // namespace pfc
