#include "paramcover/atlas.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"
#include "numeric/parallel.hpp"

namespace pfc {

AffineChart AffineChart::onto(const Box& image) {
  AffineChart c;
  c.dim = static_cast<int>(image.size());
  for (auto& iv : image) {
    if (!(iv.lo < iv.hi)) fail(ErrorCode::InvalidArgument, "chart image must have positive width");
    c.scale.push_back(iv.width());
    c.offset.push_back(iv.lo);
  }
  c.image = image;
  c.cert.certified = false;
  return c;
}

std::vector<Rational> AffineChart::apply(const std::vector<Rational>& s) const {
  std::vector<Rational> out(s.size());
  for (size_t i = 0; i < s.size(); ++i) out[i] = offset[i] + scale[i] * s[i];
  return out;
}

std::vector<Expr> AffineChart::compose(const std::vector<Expr>& fs) const {
  std::vector<Expr> repl;
  for (int i = 0; i < dim; ++i) repl.push_back(ex::add(ex::constant(offset[i]), ex::mul(ex::constant(scale[i]), ex::var(i))));
  std::vector<Expr> out;
  for (Expr f : fs) out.push_back(substitute(f, repl));
  return out;
}

const std::vector<Expr>& Atlas::chart_target(size_t i) const {
  int p = charts.at(i).piece;
  if (p >= 0) return pieces.at(static_cast<size_t>(p)).composed;
  return target;
}

std::vector<Expr> graph_tuple(Expr f, int dim) {
  std::vector<Expr> F;
  for (int i = 0; i < dim; ++i) F.push_back(ex::var(i));
  F.push_back(f);
  return F;
}

namespace {

const Rational kOne(1);

NormOptions cert_options(const AtlasOptions& o) {
  NormOptions n;
  n.slack = o.slack;
  n.max_boxes = o.max_norm_boxes;
  n.target = kOne + o.slack;
  return n;
}

// Values and first derivatives of G^{(j)}, j = 0..q, read off one interval jet
// of order q + 1 over the box, sharpened with a mean-value form.
class JetSignFamily : public SignFamily {
 public:
  JetSignFamily(std::vector<Expr> fs, int q) : fs_(std::move(fs)), q_(q) {
    for (int k = 0; k <= q_ + 1; ++k) fact_.emplace_back(Rational(factorial(static_cast<unsigned long>(k))));
  }
  size_t size() const override { return fs_.size() * static_cast<size_t>(q_ + 1); }

  void enclose(const Interval& x, std::vector<Interval>& values, std::vector<Interval>& derivs) const override {
    values.clear();
    derivs.clear();
    JetEvaluator ev(box_seeds({x}, q_ + 1));
    std::optional<JetEvaluator> mid;
    Interval m, off;
    if (!x.is_point()) {
      m = Interval(x.mid());
      off = x - m;
      mid.emplace(box_seeds({m}, q_));
    }
    for (Expr f : fs_) {
      Jet<Interval> j = ev.eval(f);
      std::optional<Jet<Interval>> jm;
      if (mid) jm = mid->eval(f);
      for (int k = 0; k <= q_; ++k) {
        Interval v = j[k] * fact_[k];
        Interval d = j[k + 1] * fact_[k + 1];
        if (jm) {
          Interval mv = (*jm)[k] * fact_[k] + d * off;
          if (auto both = intersect(v, mv)) v = *both;
        }
        values.push_back(v);
        derivs.push_back(d);
      }
    }
  }

 private:
  std::vector<Expr> fs_;
  int q_;
  std::vector<Interval> fact_;
};

int identity_index(const std::vector<Expr>& F) {
  for (size_t i = 0; i < F.size(); ++i)
    if (F[i] == ex::var(0)) return static_cast<int>(i);
  return -1;
}

long dyadic_bits(const Rational& eps) { return ceil_log2(Rational(1) / eps) + 64; }

void check_eps(const Rational& eps) {
  if (!(eps > 0 && eps < Rational(1, 2))) fail(ErrorCode::InvalidArgument, "eps must satisfy 0 < eps < 1/2");
}

Rational sup_norm(const std::vector<Expr>& fs, const Box& box, const Rational& slack) {
  NormOptions o;
  o.slack = slack;
  o.target = kOne + slack;
  return bound_norm(fs, box, 0, NormKind::Sup, o).value;
}

// e < 27183/10000
Rational e_budget(int r, int n) {
  Rational e(27183, 10000);
  Rational base = Rational(r) + Rational(n - 1) * e;
  return e * pow_q(base, r);
}

struct Pending {
  AffineChart chart;
  int depth = 0;
};

// Certifies charts, halving failures along their widest axis.
void certify_all(std::vector<Pending> work, const std::function<const std::vector<Expr>&(const AffineChart&)>& target,
                 int r, const AtlasOptions& opts, int max_depth, Atlas& atlas) {
  while (!work.empty()) {
    std::vector<NormBound> certs(work.size());
    parallel_for(work.size(), [&](size_t i) { certs[i] = certify_chart(target(work[i].chart), work[i].chart, r, opts); });
    std::vector<Pending> next;
    for (size_t i = 0; i < work.size(); ++i) {
      Pending& p = work[i];
      if (chart_passes(certs[i], opts)) {
        p.chart.cert = certs[i];
        if (certs[i].value > atlas.max_cert) atlas.max_cert = certs[i].value;
        atlas.charts.push_back(std::move(p.chart));
        continue;
      }
      ++atlas.rejected_charts;
      if (p.depth >= max_depth) {
        atlas.partial = true;
        atlas.uncovered.push_back(p.chart.image);
        continue;
      }
      size_t axis = 0;
      for (size_t a = 1; a < p.chart.image.size(); ++a)
        if (p.chart.image[a].width() > p.chart.image[axis].width()) axis = a;
      Rational m = p.chart.image[axis].mid();
      for (int side = 0; side < 2; ++side) {
        Box b = p.chart.image;
        if (side == 0)
          b[axis].hi = m;
        else
          b[axis].lo = m;
        AffineChart c = AffineChart::onto(b);
        c.r = r;
        c.piece = p.chart.piece;
        next.push_back({std::move(c), p.depth + 1});
      }
    }
    work = std::move(next);
  }
}

}  // namespace

std::vector<C1Piece> c1_prepare(const std::vector<Expr>& F, const RInterval& I, const SignBudget& budget,
                                const AtlasOptions& opts) {
  int id = identity_index(F);
  if (id < 0) fail(ErrorCode::InvalidArgument, "c1_prepare: the identity x must be among the components");
  for (Expr f : F)
    if (arity(f) > 1) fail(ErrorCode::Dimension, "c1_prepare: components must be univariate");
  size_t n = F.size();
  std::vector<Expr> D;
  for (Expr f : F) D.push_back(derive(f, 0));

  // pair (k, j), k < j: sign of D_k^2 - D_j^2
  std::vector<std::pair<size_t, size_t>> pairs;
  std::vector<Expr> diffs;
  for (size_t k = 0; k < n; ++k)
    for (size_t j = k + 1; j < n; ++j) {
      pairs.emplace_back(k, j);
      diffs.push_back(ex::sub(ex::mul(D[k], D[k]), ex::mul(D[j], D[j])));
    }

  struct Run {
    RInterval dom;
    int dominant;
  };
  std::vector<Run> runs;
  if (diffs.empty()) {
    runs.push_back({I, id});
  } else {
    auto cells = sign_partition(ExprSignFamily(diffs), I, budget);
    for (auto& c : cells) {
      if (c.degenerate) continue;
      int dom = -1;
      for (size_t k = 0; k < n && dom < 0; ++k) {
        bool ok = true;
        for (size_t p = 0; p < pairs.size() && ok; ++p) {
          auto [a, b] = pairs[p];
          if (a == k && c.signs[p] < 0) ok = false;
          if (b == k && c.signs[p] > 0) ok = false;
        }
        if (ok) dom = static_cast<int>(k);
      }
      if (dom < 0) fail(ErrorCode::Internal, "c1_prepare: no dominant component on a certified cell");
      if (!runs.empty() && runs.back().dominant == dom && runs.back().dom.hi == c.interval.lo)
        runs.back().dom.hi = c.interval.hi;
      else
        runs.push_back({c.interval, dom});
    }
  }

  long bits = dyadic_bits(budget.isolation_width < Rational(1, 4) ? budget.isolation_width : Rational(1, 4));
  std::vector<C1Piece> pieces;
  for (auto& run : runs) {
    C1Piece p;
    p.domain = run.dom;
    p.dominant = run.dominant;
    const RInterval& d = run.dom;
    if (run.dominant == id) {
      p.range = d;
      p.composed = F;
    } else {
      Expr fk = F[static_cast<size_t>(run.dominant)];
      p.increasing = eval_point(D[static_cast<size_t>(run.dominant)], {d.mid()}).positive();
      Interval a = eval_point(fk, {d.lo}), b = eval_point(fk, {d.hi});
      if (!p.increasing) std::swap(a, b);
      p.range.lo = ceil_dyadic(a.upper(), bits);
      p.range.hi = floor_dyadic(b.lower(), bits);
      if (!(p.range.lo < p.range.hi)) continue;  // below resolution; absorbed by the cover margin
      Expr inv = ex::inverse(fk, 0, d.lo, d.hi, p.increasing, ex::var(0));
      for (Expr f : F) p.composed.push_back(substitute(f, {inv}));
    }
    NormOptions o = cert_options(opts);
    p.cert = bound_norm(p.composed, Box{p.range}, 1, NormKind::R, o);
    if (p.cert.value > kOne + opts.slack)
      fail(ErrorCode::NotCertified, "c1_prepare: could not certify ||F o phi||_1 <= 1 on [" + d.lo.get_str() +
                                        ", " + d.hi.get_str() + "]");
    pieces.push_back(std::move(p));
  }
  return pieces;
}

std::vector<AffineChart> cr_subdivide(const RInterval& J, int r, const Rational& eps) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "cr_subdivide: r must be at least 1");
  check_eps(eps);
  if (!(J.lo < J.hi)) fail(ErrorCode::InvalidArgument, "cr_subdivide: empty interval");
  long bits = dyadic_bits(eps);
  const Rational half(1, 2);
  Rational growth = Rational(r + 1, r);
  std::vector<Rational> ls{eps};
  while (ls.back() < half) {
    Rational next = floor_dyadic(ls.back() * growth, bits);
    if (next > half) next = half;
    ls.push_back(next);
  }
  std::vector<std::pair<Rational, Rational>> parts;
  for (size_t k = 0; k + 1 < ls.size(); ++k) parts.emplace_back(ls[k], ls[k + 1]);
  for (size_t k = ls.size() - 1; k-- > 0;) parts.emplace_back(1 - ls[k + 1], 1 - ls[k]);
  std::vector<AffineChart> out;
  Rational w = J.width();
  for (auto& [a, b] : parts) {
    AffineChart c = AffineChart::onto(Box{RInterval{J.lo + w * a, J.lo + w * b}});
    c.r = r;
    out.push_back(std::move(c));
  }
  return out;
}

NormBound certify_chart(const std::vector<Expr>& G, const AffineChart& chart, int r, const AtlasOptions& opts) {
  std::vector<Expr> psi = chart.compose(G);
  return bound_norm(psi, unit_box(chart.dim), r, NormKind::R, cert_options(opts));
}

bool chart_passes(const NormBound& nb, const AtlasOptions& opts) { return nb.certified && nb.value <= kOne + opts.slack; }

Atlas build_atlas_1d(const std::vector<Expr>& F, int r, const Rational& eps, const AtlasOptions& opts) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "build_atlas_1d: r must be at least 1");
  check_eps(eps);
  for (Expr f : F)
    if (arity(f) > 1) fail(ErrorCode::Dimension, "build_atlas_1d: components must be univariate");
  int id = identity_index(F);
  if (id < 0) fail(ErrorCode::InvalidArgument, "build_atlas_1d: the identity x must be among the components");
  PrecisionScope prec(std::max<mpfr_prec_t>(working_precision(), ceil_log2(Rational(1) / eps) + 96));

  Atlas atlas;
  atlas.target = F;
  atlas.dim = 1;
  atlas.r = r;
  atlas.eps = eps;
  atlas.e_budget = e_budget(r, 1);
  const RInterval I{0, 1};
  const Box IB{I};

  if (sup_norm(F, IB, opts.slack) > kOne + opts.slack)
    fail(ErrorCode::Domain, "build_atlas_1d: components must take values in [-1, 1] (rescale into I)");

  if (opts.identity_shortcut) {
    NormOptions o = cert_options(opts);
    o.target = kOne;
    NormBound nb = bound_norm(F, IB, r, NormKind::R, o);
    if (nb.value <= 1) {
      C1Piece p;
      p.domain = p.range = I;
      p.dominant = id;
      p.composed = F;
      p.cert = nb;
      atlas.pieces.push_back(p);
      AffineChart c = AffineChart::onto(IB);
      c.r = r;
      c.piece = 0;
      c.cert = nb;
      atlas.charts.push_back(c);
      atlas.identity_shortcut = true;
      atlas.max_cert = nb.value;
      atlas.lipschitz = 1;
      atlas.cover_bound = 0;
      return atlas;
    }
  }

  std::vector<Expr> D;
  for (Expr f : F) D.push_back(derive(f, 0));
  NormOptions lo;
  lo.slack = Rational(1, 16);
  atlas.lipschitz = std::max(Rational(1), bound_norm(D, IB, 0, NormKind::Sup, lo).value);

  SignBudget budget = opts.sign_budget;
  budget.isolation_width = eps / (4 * atlas.lipschitz);
  budget.max_depth = std::max<int>(budget.max_depth, static_cast<int>(ceil_log2(1 / budget.isolation_width)) + 8);

  atlas.pieces = c1_prepare(F, I, budget, opts);

  // Coarse sweep of each piece first. The derivative-sign cells are only
  // needed inside charts that fail; those are re-swept per cell (or halved
  // when no cell boundary falls inside them).
  std::vector<Pending> work;
  for (size_t pi = 0; pi < atlas.pieces.size(); ++pi) {
    const C1Piece& p = atlas.pieces[pi];
    std::vector<AffineChart> coarse = cr_subdivide(p.range, r, eps / 2);
    std::vector<NormBound> certs(coarse.size());
    parallel_for(coarse.size(), [&](size_t i) { certs[i] = certify_chart(p.composed, coarse[i], r, opts); });
    std::optional<std::vector<SignCell>> cells;
    bool tried = false;
    for (size_t i = 0; i < coarse.size(); ++i) {
      AffineChart& c = coarse[i];
      c.piece = static_cast<int>(pi);
      if (chart_passes(certs[i], opts)) {
        c.cert = certs[i];
        if (certs[i].value > atlas.max_cert) atlas.max_cert = certs[i].value;
        atlas.charts.push_back(std::move(c));
        continue;
      }
      ++atlas.rejected_charts;
      if (!tried) {
        tried = true;
        try {
          cells = sign_partition(JetSignFamily(p.composed, r + 1), p.range, budget);
          atlas.sign_cells += cells->size();
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Budget) throw;
          ++atlas.sign_failures;
        }
      }
      const RInterval& J = c.image[0];
      std::vector<RInterval> parts;
      if (cells) {
        for (auto& cell : *cells) {
          if (cell.degenerate) continue;
          Rational lo = std::max(cell.interval.lo, J.lo), hi = std::min(cell.interval.hi, J.hi);
          if (lo < hi) parts.push_back({lo, hi});
        }
      }
      if (!cells || (parts.size() == 1 && parts[0] == J)) {
        work.push_back({std::move(c), 1});
        continue;
      }
      for (auto& K : parts)
        for (auto& sub : cr_subdivide(K, r, eps / 2)) {
          sub.piece = static_cast<int>(pi);
          work.push_back({std::move(sub), 0});
        }
    }
  }
  auto target = [&](const AffineChart& c) -> const std::vector<Expr>& {
    return atlas.pieces[static_cast<size_t>(c.piece)].composed;
  };
  certify_all(std::move(work), target, r, opts, opts.max_halvings, atlas);
  std::sort(atlas.charts.begin(), atlas.charts.end(), [](const AffineChart& a, const AffineChart& b) {
    if (a.piece != b.piece) return a.piece < b.piece;
    return a.image[0].lo < b.image[0].lo;
  });
  atlas.within_e_budget = atlas.max_cert <= atlas.e_budget;

  // Certified cover gap. G is (1 + slack)-Lipschitz in the piece coordinate
  // and F is L-Lipschitz in x.
  Rational lip = kOne + opts.slack;
  Rational bound = 0;
  auto upd = [&](const Rational& v) {
    if (v > bound) bound = v;
  };
  std::vector<std::pair<Rational, Rational>> end_gap(atlas.pieces.size(), {Rational(1), Rational(1)});
  for (size_t pi = 0; pi < atlas.pieces.size(); ++pi) {
    const C1Piece& p = atlas.pieces[pi];
    std::vector<const AffineChart*> cs;
    for (auto& c : atlas.charts)
      if (c.piece == static_cast<int>(pi)) cs.push_back(&c);
    if (cs.empty()) continue;
    for (size_t i = 0; i + 1 < cs.size(); ++i) upd(lip * (cs[i + 1]->image[0].lo - cs[i]->image[0].hi) / 2);
    // w-range ends versus the true image of the piece endpoints
    Rational w_lo = p.range.lo, w_hi = p.range.hi;
    if (p.dominant != id) {
      Expr fk = F[static_cast<size_t>(p.dominant)];
      Interval a = eval_point(fk, {p.domain.lo}), b = eval_point(fk, {p.domain.hi});
      if (!p.increasing) std::swap(a, b);
      w_lo = a.lower();
      w_hi = b.upper();
    }
    Rational g_lo = lip * (cs.front()->image[0].lo - w_lo), g_hi = lip * (w_hi - cs.back()->image[0].hi);
    // gaps at the x-ends of the piece
    end_gap[pi] = p.increasing || p.dominant == id ? std::make_pair(g_lo, g_hi) : std::make_pair(g_hi, g_lo);
    upd(g_lo);
    upd(g_hi);
  }
  Rational prev_hi = 0;
  Rational prev_gap = 0;
  for (size_t pi = 0; pi < atlas.pieces.size(); ++pi) {
    const C1Piece& p = atlas.pieces[pi];
    upd(atlas.lipschitz * (p.domain.lo - prev_hi) + std::max(prev_gap, end_gap[pi].first));
    prev_hi = p.domain.hi;
    prev_gap = end_gap[pi].second;
  }
  upd(atlas.lipschitz * (1 - prev_hi) + prev_gap);
  atlas.cover_bound = bound;
  if (atlas.pieces.empty()) atlas.partial = true;
  return atlas;
}

Atlas build_atlas_2d(Expr f, int r, const Rational& eps, const AtlasOptions& opts) {
  if (r < 1) fail(ErrorCode::InvalidArgument, "build_atlas_2d: r must be at least 1");
  check_eps(eps);
  if (arity(f) > 2) fail(ErrorCode::Dimension, "build_atlas_2d: f must be a function of (x, y)");
  Atlas atlas;
  atlas.target = graph_tuple(f, 2);
  atlas.dim = 2;
  atlas.r = r;
  atlas.eps = eps;
  atlas.e_budget = e_budget(r, 2);
  atlas.cover_bound = 0;
  atlas.lipschitz = 1;
  const Box I2 = unit_box(2);
  const auto& F = atlas.target;

  if (sup_norm(F, I2, opts.slack) > kOne + opts.slack)
    fail(ErrorCode::Domain, "build_atlas_2d: f must take values in [-1, 1] (rescale into I)");

  if (opts.identity_shortcut) {
    NormOptions o = cert_options(opts);
    o.target = kOne;
    NormBound nb = bound_norm(F, I2, r, NormKind::R, o);
    if (nb.value <= 1) {
      AffineChart c = AffineChart::onto(I2);
      c.r = r;
      c.cert = nb;
      atlas.charts.push_back(c);
      atlas.identity_shortcut = true;
      atlas.max_cert = nb.value;
      return atlas;
    }
  }

  // Fiberwise pass: x-cells are refined while the x-derivatives dominate, and
  // within an x-cell the y-fiber is refined while the y-derivatives dominate.
  Expr fx = derive(f, 0), fy = derive(f, 1);
  std::vector<Pending> work{{AffineChart::onto(I2), 0}};
  work[0].chart.r = r;
  while (!work.empty()) {
    std::vector<NormBound> certs(work.size());
    std::vector<std::pair<Rational, Rational>> demand(work.size());
    parallel_for(work.size(), [&](size_t i) {
      const AffineChart& c = work[i].chart;
      certs[i] = certify_chart(F, c, r, opts);
      if (!chart_passes(certs[i], opts)) {
        IntervalEvaluator ev(to_intervals(c.image));
        demand[i] = {ev.eval(fx).mag() * c.scale[0], ev.eval(fy).mag() * c.scale[1]};
      }
    });
    std::vector<Pending> next;
    for (size_t i = 0; i < work.size(); ++i) {
      Pending& p = work[i];
      if (chart_passes(certs[i], opts)) {
        p.chart.cert = certs[i];
        if (certs[i].value > atlas.max_cert) atlas.max_cert = certs[i].value;
        atlas.charts.push_back(std::move(p.chart));
        continue;
      }
      ++atlas.rejected_charts;
      if (p.depth >= opts.max_depth_2d) {
        atlas.partial = true;
        atlas.uncovered.push_back(p.chart.image);
        continue;
      }
      auto [dx, dy] = demand[i];
      bool split_x = dx * 2 >= dy, split_y = dy * 2 >= dx;
      std::vector<Box> boxes{p.chart.image};
      for (int axis = 0; axis < 2; ++axis) {
        if ((axis == 0 && !split_x) || (axis == 1 && !split_y)) continue;
        std::vector<Box> halves;
        for (auto& b : boxes) {
          Rational m = b[axis].mid();
          Box lo = b, hi = b;
          lo[axis].hi = m;
          hi[axis].lo = m;
          halves.push_back(lo);
          halves.push_back(hi);
        }
        boxes = std::move(halves);
      }
      for (auto& b : boxes) {
        AffineChart c = AffineChart::onto(b);
        c.r = r;
        next.push_back({std::move(c), p.depth + 1});
      }
    }
    work = std::move(next);
  }
  std::sort(atlas.charts.begin(), atlas.charts.end(), [](const AffineChart& a, const AffineChart& b) {
    for (size_t k = 0; k < 2; ++k) {
      if (a.image[k].lo != b.image[k].lo) return a.image[k].lo < b.image[k].lo;
      if (a.image[k].hi != b.image[k].hi) return a.image[k].hi < b.image[k].hi;
    }
    return false;
  });
  atlas.within_e_budget = atlas.max_cert <= atlas.e_budget;

  // Near-maximizers of |f_x| along y-fibers: the sup over a y-grid must be
  // stable under refinement (uniform boundedness in y).
  std::map<Rational, bool> x_cells;
  for (auto& c : atlas.charts) x_cells[c.image[0].mid()] = true;
  for (auto& [x, unused] : x_cells) {
    (void)unused;
    Rational coarse = 0, fine = 0;
    for (int k = 0; k <= 128; ++k) {
      Rational v = eval_point(fx, {x, Rational(k, 128)}).mag();
      if (v > fine) fine = v;
      if (k % 2 == 0 && v > coarse) coarse = v;
    }
    ++atlas.fiber_checks;
    if (fine > coarse * Rational(5, 4) + opts.slack) ++atlas.fiber_unstable;
  }
  return atlas;
}

Rational recertify(const Atlas& atlas, const AtlasOptions& opts) {
  std::vector<Rational> vals(atlas.charts.size());
  parallel_for(atlas.charts.size(), [&](size_t i) {
    vals[i] = certify_chart(atlas.chart_target(i), atlas.charts[i], atlas.r, opts).value;
  });
  Rational best = 0;
  for (auto& v : vals)
    if (v > best) best = v;
  return best;
}

}  // namespace pfc
