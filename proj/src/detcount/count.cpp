#include "detcount/count.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"
#include "numeric/parallel.hpp"

namespace pfc {

std::string method_name(CountMethod m) {
  switch (m) {
    case CountMethod::Determinant:
      return "determinant";
    case CountMethod::Siegel:
      return "siegel";
    case CountMethod::Oracle:
      return "oracle";
  }
  return "unknown";
}

CountMethod parse_method(const std::string& s) {
  if (s == "determinant") return CountMethod::Determinant;
  if (s == "siegel") return CountMethod::Siegel;
  if (s == "oracle") return CountMethod::Oracle;
  fail(ErrorCode::InvalidArgument, "unknown method '" + s + "' (expected determinant, siegel or oracle)");
}

namespace {

// x_k = c_k + s_k u_k for the m arguments and the value.
struct Frame {
  std::vector<Rational> c, s;

  Rational to_unit(size_t k, const Rational& x) const { return (x - c[k]) / s[k]; }
  Rational from_unit(size_t k, const Rational& u) const { return c[k] + s[k] * u; }
};

Frame make_frame(const ExprFn& f) {
  const int m = f.arity();
  Frame fr;
  for (auto& iv : f.domain()) {
    if (!(iv.lo < iv.hi)) fail(ErrorCode::InvalidArgument, "count_rational_points: domain must have positive width");
    fr.c.push_back(iv.lo);
    fr.s.push_back(iv.hi - iv.lo);
  }
  const int split = m == 1 ? 64 : 8;
  std::optional<Interval> img;
  std::vector<size_t> idx(static_cast<size_t>(m), 0);
  for (;;) {
    std::vector<Interval> box;
    for (int k = 0; k < m; ++k) {
      const RInterval& d = f.domain()[static_cast<size_t>(k)];
      Rational w = d.width() / split;
      box.emplace_back(d.lo + w * static_cast<long>(idx[k]), d.lo + w * static_cast<long>(idx[k] + 1));
    }
    Interval v = eval_interval(f.tree(), box);
    if (!v.finite()) fail(ErrorCode::Domain, "count_rational_points: f is unbounded on the domain");
    img = img ? hull(*img, v) : v;
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == static_cast<size_t>(split)) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  Rational lo = floor_dyadic(img->lower(), 8), hi = ceil_dyadic(img->upper(), 8);
  fr.c.push_back(lo);
  fr.s.push_back(hi > lo ? hi - lo : Rational(1));
  return fr;
}

Expr normalized_expr(const ExprFn& f, const Frame& fr) {
  const int m = f.arity();
  std::vector<Expr> repl;
  for (int k = 0; k < m; ++k)
    repl.push_back(ex::add(ex::constant(fr.c[static_cast<size_t>(k)]),
                           ex::mul(ex::constant(fr.s[static_cast<size_t>(k)]), ex::var(k))));
  Expr g = substitute(f.tree(), repl);
  return ex::div(ex::sub(g, ex::constant(fr.c[static_cast<size_t>(m)])), ex::constant(fr.s[static_cast<size_t>(m)]));
}

// Graph polynomial den * (y - f(x)) of a polynomial f, in the basis of degree d.
CoveringPolynomial graph_polynomial(const Polynomial& fp, int m, int d) {
  MonomialBasis basis(m + 1, d);
  BigInt den = 1;
  for (auto& [a, c] : fp.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::map<MultiIndex, BigInt> want;
  MultiIndex y(static_cast<size_t>(m + 1), 0);
  y[static_cast<size_t>(m)] = 1;
  want[y] = den;
  for (auto& [a, c] : fp.terms()) {
    MultiIndex e = a;
    e.push_back(0);
    Rational v = -c * Rational(den);
    want[e] += v.get_num();
  }
  std::vector<BigInt> coeffs;
  for (auto& a : basis.monomials()) {
    auto it = want.find(a);
    coeffs.push_back(it == want.end() ? BigInt(0) : it->second);
  }
  return CoveringPolynomial(basis, std::move(coeffs), Provenance::GraphIdeal);
}


struct Assigned {
  size_t member = 0;
  size_t chart = 0;
  std::vector<Rational> s;  // chart parameter, clamped into [0,1]^m
  bool margin = false;      // outside the chart image, within eps of it
};

struct Cell {
  size_t chart = 0;
  Box sbox;
  std::vector<Assigned> pts;
  CoveringPolynomial P;
};

class Pipeline {
 public:
  Pipeline(const ExprFn& f, const HeightBound& bound, const CountOptions& opts, CountReport& rep)
      : f_(f), bound_(bound), opts_(opts), rep_(rep), m_(f.arity()) {}

  void run();

 private:
  void downgrade(const std::string& why) {
    rep_.downgrades.push_back(why);
    rep_.transcript.push_back("downgraded: " + why);
  }
  RInterval chart_u_range(size_t ci, const RInterval& srange) const;
  Box chart_unit_box(size_t ci, const Box& sbox) const;
  void collect_candidates();
  std::optional<Assigned> assign(size_t member) const;
  void determinant_cells(const std::vector<Assigned>& assigned);
  void siegel_cells(const std::vector<Assigned>& assigned);
  void fit_kernel(Cell& c, Provenance prov);
  std::vector<Expr> original_chart(size_t ci) const;
  void intersect_cells();
  void structural_block();

  const ExprFn& f_;
  HeightBound bound_;
  const CountOptions& opts_;
  CountReport& rep_;
  const int m_;
  Frame fr_;
  Expr gn_ = nullptr;
  Expr dgn_ = nullptr;
  ParameterChoice pc_;
  Atlas atlas_;
  std::vector<std::vector<size_t>> piece_charts_;  // 1D: charts of each piece, ordered by image
  std::vector<RationalPoint> members_;
  std::vector<std::vector<Rational>> unit_;        // members in unit coordinates
  std::vector<Cell> cells_;
  std::vector<bool> absorbed_;
};

RInterval Pipeline::chart_u_range(size_t ci, const RInterval& sr) const {
  const AffineChart& ch = atlas_.charts[ci];
  RInterval w{ch.offset[0] + ch.scale[0] * sr.lo, ch.offset[0] + ch.scale[0] * sr.hi};
  const C1Piece& p = atlas_.pieces.at(static_cast<size_t>(ch.piece));
  if (p.dominant == 0) return w;
  InverseBranch br{gn_, dgn_, 0, p.domain.lo, p.domain.hi, p.increasing};
  Interval u = inverse_enclosure(br, Interval(w.lo, w.hi));
  return {std::max(u.lower(), p.domain.lo), std::min(u.upper(), p.domain.hi)};
}

Box Pipeline::chart_unit_box(size_t ci, const Box& sbox) const {
  if (m_ == 1) return {chart_u_range(ci, sbox[0])};
  const AffineChart& ch = atlas_.charts[ci];
  Box b;
  for (size_t k = 0; k < 2; ++k)
    b.push_back({ch.offset[k] + ch.scale[k] * sbox[k].lo, ch.offset[k] + ch.scale[k] * sbox[k].hi});
  return b;
}

// Candidates come from the eps-neighbourhood of every chart image, so points
// in the cover margins are seen too.
void Pipeline::collect_candidates() {
  const Rational& eps = atlas_.eps;
  std::vector<Box> ranges;
  for (size_t ci = 0; ci < atlas_.charts.size(); ++ci) ranges.push_back(chart_unit_box(ci, unit_box(m_)));
  if (atlas_.partial) {
    if (m_ == 1)
      ranges.push_back(unit_box(1));  // 1D uncovered parts are recorded in w coordinates
    else
      for (auto& b : atlas_.uncovered) ranges.push_back(b);
  }
  std::set<std::vector<Rational>> cand;
  for (auto& ub : ranges) {
    std::vector<std::vector<Rational>> axes;
    for (size_t k = 0; k < ub.size(); ++k) {
      const RInterval& dom = f_.domain()[k];
      RInterval xr{std::max(dom.lo, fr_.from_unit(k, ub[k].lo - eps)),
                   std::min(dom.hi, fr_.from_unit(k, ub[k].hi + eps))};
      axes.push_back(xr.lo <= xr.hi ? enumerate_rationals(xr, bound_.H) : std::vector<Rational>{});
    }
    if (m_ == 1) {
      for (auto& x : axes[0]) cand.insert({x});
    } else {
      for (auto& x : axes[0])
        for (auto& y : axes[1]) cand.insert({x, y});
    }
  }
  std::vector<std::vector<Rational>> args(cand.begin(), cand.end());
  rep_.candidates = args.size();
  std::vector<Membership> res(args.size());
  parallel_for(args.size(), [&](size_t i) { res[i] = classify_value(f_, args[i], bound_.H, opts_.max_precision); });
  for (size_t i = 0; i < args.size(); ++i) {
    if (res[i].kind == Membership::NonMember) continue;
    if (res[i].kind == Membership::Unknown) {
      rep_.unknowns.push_back({args[i], res[i].value, res[i].precision});
      continue;
    }
    std::vector<Rational> p = args[i];
    p.push_back(res[i].value);
    members_.emplace_back(std::move(p));
  }
  std::sort(members_.begin(), members_.end());
  for (auto& p : members_) {
    std::vector<Rational> u;
    for (size_t k = 0; k < p.dim(); ++k) u.push_back(fr_.to_unit(k, p.coords[k]));
    unit_.push_back(std::move(u));
  }
  rep_.transcript.push_back(std::to_string(args.size()) + " candidates, " + std::to_string(members_.size()) +
                            " members, " + std::to_string(rep_.unknowns.size()) + " unknown");
}

std::optional<Assigned> Pipeline::assign(size_t member) const {
  const std::vector<Rational>& u = unit_[member];
  Assigned a;
  a.member = member;
  if (m_ == 1) {
    for (size_t pi = 0; pi < atlas_.pieces.size(); ++pi) {
      const C1Piece& p = atlas_.pieces[pi];
      if (!p.domain.contains(u[0]) || piece_charts_[pi].empty()) continue;
      // dominant coordinate: moving it by t moves the point by exactly t in l_inf
      const Rational& w = p.dominant == 0 ? u[0] : u[1];
      std::optional<size_t> best;
      Rational best_dist;
      for (size_t ci : piece_charts_[pi]) {
        const RInterval& im = atlas_.charts[ci].image[0];
        Rational dist = w < im.lo ? im.lo - w : (w > im.hi ? w - im.hi : Rational(0));
        if (!best || dist < best_dist) {
          best = ci;
          best_dist = dist;
        }
        if (dist == 0) break;
      }
      if (!best || best_dist > atlas_.eps) continue;
      const AffineChart& ch = atlas_.charts[*best];
      a.chart = *best;
      a.s = {std::clamp(Rational((w - ch.offset[0]) / ch.scale[0]), Rational(0), Rational(1))};
      a.margin = best_dist > 0;
      return a;
    }
    return std::nullopt;
  }
  // 2D charts tile the unit square; exact containment only.
  for (size_t ci = 0; ci < atlas_.charts.size(); ++ci) {
    const Box& im = atlas_.charts[ci].image;
    if (!im[0].contains(u[0]) || !im[1].contains(u[1])) continue;
    const AffineChart& ch = atlas_.charts[ci];
    a.chart = ci;
    for (size_t k = 0; k < 2; ++k) a.s.push_back((u[k] - ch.offset[k]) / ch.scale[k]);
    return a;
  }
  return std::nullopt;
}

std::vector<Expr> Pipeline::original_chart(size_t ci) const {
  std::vector<Expr> unit = atlas_.charts[ci].compose(atlas_.chart_target(ci));
  std::vector<Expr> out;
  for (size_t k = 0; k < unit.size(); ++k)
    out.push_back(ex::add(ex::constant(fr_.c[k]), ex::mul(ex::constant(fr_.s[k]), unit[k])));
  return out;
}

void Pipeline::fit_kernel(Cell& c, Provenance prov) {
  std::vector<RationalPoint> pts;
  for (auto& a : c.pts) pts.push_back(members_[a.member]);
  MonomialBasis basis(m_ + 1, pc_.d);
  try {
    c.P = fit_exact_kernel(pts, basis);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Budget) throw;
    fail(ErrorCode::Internal, "count_rational_points: " + std::to_string(pts.size()) +
                                  " points of one subbox have full rank, contradicting the vanishing bound");
  }
  c.P.provenance = prov;
}

void Pipeline::determinant_cells(const std::vector<Assigned>& assigned) {
  const long per_side = 1L << pc_.log2_inv_delta;
  std::map<std::pair<size_t, std::vector<long>>, size_t> index;
  for (auto& a : assigned) {
    std::vector<long> key;
    for (auto& s : a.s) {
      long k = floor_q(s * Rational(BigInt(per_side))).get_si();
      key.push_back(std::min(k, per_side - 1));
    }
    auto [it, fresh] = index.try_emplace({a.chart, key}, cells_.size());
    if (fresh) {
      Cell c;
      c.chart = a.chart;
      for (long k : key) c.sbox.push_back({pc_.delta * k, pc_.delta * (k + 1)});
      cells_.push_back(std::move(c));
    }
    cells_[it->second].pts.push_back(a);
  }
  for (auto& c : cells_) fit_kernel(c, Provenance::DeterminantCertified);
}

void Pipeline::siegel_cells(const std::vector<Assigned>& assigned) {
  std::map<size_t, std::vector<Assigned>> by_chart;
  for (auto& a : assigned) by_chart[a.chart].push_back(a);
  MonomialBasis basis(m_ + 1, opts_.siegel_degree);
  size_t failed = 0, stray = 0;
  for (auto& [ci, pts] : by_chart) {
    std::vector<Expr> psi = original_chart(ci);
    struct Item {
      Box box;
      std::vector<Assigned> pts;
      int depth;
    };
    std::vector<Item> work{{unit_box(m_), pts, 0}};
    while (!work.empty()) {
      Item it = std::move(work.back());
      work.pop_back();
      if (it.pts.empty()) continue;
      std::vector<RationalPoint> inside;
      for (auto& a : it.pts)
        if (!a.margin) inside.push_back(members_[a.member]);
      SiegelFit fit = fit_siegel(inside, basis, SiegelChart{psi, it.box, bound_});
      if (fit.certified) {
        Cell c{ci, it.box, {}, fit.P};
        for (auto& a : it.pts) {
          if (a.margin && fit.P.eval(members_[a.member].coords) != 0) {
            // off the certified box: the Liouville argument does not reach it
            Cell single{ci, it.box, {a}, {}};
            fit_kernel(single, Provenance::ExactKernel);
            cells_.push_back(std::move(single));
            ++stray;
            continue;
          }
          c.pts.push_back(a);
        }
        if (!c.pts.empty()) cells_.push_back(std::move(c));
        continue;
      }
      if (it.depth >= opts_.siegel_max_depth) {
        Cell c{ci, it.box, it.pts, {}};
        fit_kernel(c, Provenance::ExactKernel);
        cells_.push_back(std::move(c));
        ++failed;
        continue;
      }
      std::vector<Item> kids{{it.box, {}, it.depth + 1}};
      for (int k = 0; k < m_; ++k) {
        std::vector<Item> next;
        Rational mid = it.box[static_cast<size_t>(k)].mid();
        for (auto& kid : kids) {
          Item lo = kid, hi = kid;
          lo.box[static_cast<size_t>(k)].hi = mid;
          hi.box[static_cast<size_t>(k)].lo = mid;
          next.push_back(std::move(lo));
          next.push_back(std::move(hi));
        }
        kids = std::move(next);
      }
      for (auto& a : it.pts) {
        for (auto& kid : kids) {
          bool in = true;
          for (size_t k = 0; k < kid.box.size(); ++k) in = in && kid.box[k].contains(a.s[k]);
          if (in) {
            kid.pts.push_back(a);
            break;
          }
        }
      }
      for (auto& kid : kids) work.push_back(std::move(kid));
    }
  }
  if (failed) downgrade(std::to_string(failed) + " boxes without a certified lattice polynomial");
  if (stray) downgrade(std::to_string(stray) + " margin points off their lattice polynomial");
}

void Pipeline::intersect_cells() {
  size_t undecided = 0, zero_boxes = 0;
  for (auto& c : cells_) {
    if (m_ == 2) {
      Box xb;
      Box ub = chart_unit_box(c.chart, c.sbox);
      for (size_t k = 0; k < 2; ++k) xb.push_back({fr_.from_unit(k, ub[k].lo), fr_.from_unit(k, ub[k].hi)});
      zero_boxes += intersect_with_graph(f_, c.P, xb, 4).zero_locus_boxes;
      continue;
    }
    RInterval ur = chart_u_range(c.chart, c.sbox[0]);
    for (auto& a : c.pts) {
      ur.lo = std::min(ur.lo, unit_[a.member][0]);
      ur.hi = std::max(ur.hi, unit_[a.member][0]);
    }
    RInterval xr{fr_.from_unit(0, ur.lo), fr_.from_unit(0, ur.hi)};
    IntersectionResult ir = intersect_with_graph(f_, c.P, {xr}, opts_.intersect_depth);
    if (ir.arc) fail(ErrorCode::Internal, "count_rational_points: covering polynomial contains a transcendental arc");
    if (!ir.undecided.empty()) ++undecided;
    if (ir.count_hi && *ir.count_hi < c.pts.size())
      fail(ErrorCode::Internal, "count_rational_points: fewer isolated zeros than points in a cell");
    for (auto& a : c.pts) {
      const Rational& x = members_[a.member].coords[0];
      bool seen = false;
      for (auto& I : ir.isolating) seen = seen || I.contains(x);
      for (auto& b : ir.undecided) seen = seen || b[0].contains(x);
      if (!seen) fail(ErrorCode::Internal, "count_rational_points: a point of the cell is missing from its zero set");
    }
  }
  if (undecided) downgrade(std::to_string(undecided) + " cells with undecided zero isolation");
  if (m_ == 2) rep_.transcript.push_back("surface zero-locus diagnostic: " + std::to_string(zero_boxes) + " boxes");
}

void Pipeline::structural_block() {
  Polynomial fp = *expand_polynomial(f_.tree(), m_);
  CoveringPolynomial P = graph_polynomial(fp, m_, pc_.d);
  IntersectionResult ir = intersect_with_graph(f_, P, f_.domain(), opts_.intersect_depth);
  if (!ir.arc) fail(ErrorCode::Internal, "count_rational_points: graph polynomial does not vanish on the graph");
  for (auto& p : members_)
    if (P.eval(p.coords) != 0) fail(ErrorCode::Internal, "count_rational_points: point off the graph polynomial");
  Block b;
  b.kind = Block::Arc;
  b.region = f_.domain();
  b.P = P;
  b.closure_degree = pc_.d;
  rep_.blocks.push_back(std::move(b));
  absorbed_.assign(members_.size(), true);
  rep_.cells = 1;
  rep_.transcript.push_back("graph polynomial " + P.str() + " absorbs all " + std::to_string(members_.size()) +
                            " points");
}

void Pipeline::run() {
  rep_.m = m_;
  rep_.H = bound_.H;
  rep_.g = bound_.g;
  rep_.method = method_name(opts_.method);
  fr_ = make_frame(f_);
  gn_ = normalized_expr(f_, fr_);
  dgn_ = derive(gn_, 0);

  ParameterInput in;
  in.m = m_;
  // heights <= 1 are a subset of heights <= 2
  in.bound = {std::max<uint64_t>(bound_.H, 2), bound_.g};
  in.method = rep_.method;
  in.scales = fr_.s;
  in.polynomial = expand_polynomial(f_.tree(), m_);
  pc_ = choose_parameters(in);
  for (auto& t : pc_.transcript) rep_.transcript.push_back(t);
  rep_.r = pc_.r;
  rep_.d = opts_.method == CountMethod::Siegel && !pc_.structural ? opts_.siegel_degree : pc_.d;
  rep_.mu = pc_.structural || opts_.method != CountMethod::Siegel ? pc_.mu : MonomialBasis(m_ + 1, rep_.d).size();
  rep_.delta = pc_.delta;
  rep_.eps = pc_.structural ? opts_.structural_eps : pc_.eps;

  atlas_ = m_ == 1 ? build_atlas_1d(graph_tuple(gn_, 1), pc_.r, rep_.eps, opts_.atlas)
                   : build_atlas_2d(gn_, pc_.r, rep_.eps, opts_.atlas);
  rep_.n_charts = atlas_.charts.size();
  rep_.transcript.push_back("atlas: " + std::to_string(atlas_.charts.size()) + " charts, r = " +
                            std::to_string(pc_.r));
  if (atlas_.partial) downgrade("atlas incomplete: " + std::to_string(atlas_.uncovered.size()) + " regions uncovered");
  if (atlas_.max_cert > in.cert) downgrade("a chart certificate exceeds the bound assumed by the parameters");
  if (m_ == 1 && atlas_.cover_bound > rep_.eps) downgrade("cover gap bound exceeds eps");
  if (m_ == 1) {
    piece_charts_.assign(atlas_.pieces.size(), {});
    for (size_t ci = 0; ci < atlas_.charts.size(); ++ci)
      piece_charts_.at(static_cast<size_t>(atlas_.charts[ci].piece)).push_back(ci);
    for (auto& v : piece_charts_)
      std::sort(v.begin(), v.end(), [&](size_t a, size_t b) {
        return atlas_.charts[a].image[0].lo < atlas_.charts[b].image[0].lo;
      });
  }

  collect_candidates();
  if (!rep_.unknowns.empty()) downgrade(std::to_string(rep_.unknowns.size()) + " candidates with unknown membership");
  absorbed_.assign(members_.size(), false);

  if (pc_.structural) {
    structural_block();
  } else {
    std::vector<Assigned> assigned;
    size_t lost = 0;
    for (size_t i = 0; i < members_.size(); ++i) {
      if (auto a = assign(i))
        assigned.push_back(std::move(*a));
      else
        ++lost;
    }
    if (lost) downgrade(std::to_string(lost) + " points outside every chart neighbourhood");
    if (opts_.method == CountMethod::Siegel)
      siegel_cells(assigned);
    else
      determinant_cells(assigned);
    rep_.cells = cells_.size();
    intersect_cells();
  }

  rep_.points = members_;
  for (size_t i = 0; i < members_.size(); ++i) {
    if (absorbed_[i]) continue;
    Block b;
    b.point = members_[i];
    rep_.blocks.push_back(std::move(b));
    ++rep_.transcendental_count;
  }
  rep_.count = members_.size();
}

}  // namespace

CountReport count_rational_points(const ExprFn& f, const HeightBound& bound, const CountOptions& opts) {
  if (f.arity() != 1 && f.arity() != 2) fail(ErrorCode::Dimension, "count_rational_points: dimension must be 1 or 2");
  if (bound.g != 1) fail(ErrorCode::InvalidArgument, "count_rational_points: only g = 1 is supported");
  if (bound.H < 1) fail(ErrorCode::InvalidArgument, "count_rational_points: H must be positive");
  CountReport rep;
  if (opts.method == CountMethod::Oracle) {
    OracleResult o = oracle_count(f, f.domain(), bound, opts.max_precision);
    rep.m = f.arity();
    rep.H = bound.H;
    rep.g = bound.g;
    rep.method = "oracle";
    rep.points = o.members;
    rep.unknowns = o.unknowns;
    rep.candidates = o.candidates;
    rep.count = o.members.size();
    for (auto& p : o.members) {
      Block b;
      b.point = p;
      rep.blocks.push_back(std::move(b));
    }
    rep.transcendental_count = rep.count;
    if (!o.unknowns.empty())
      rep.downgrades.push_back(std::to_string(o.unknowns.size()) + " candidates with unknown membership");
    rep.certified = rep.downgrades.empty();
    return rep;
  }
  Pipeline(f, bound, opts, rep).run();
  uint64_t cutoff = f.arity() == 1 ? opts.oracle_cutoff_curve : opts.oracle_cutoff_surface;
  if (opts.cross_check && bound.H <= cutoff) {
    OracleResult o = oracle_count(f, f.domain(), bound, opts.max_precision);
    rep.oracle_agreement = o.members == rep.points && o.unknowns.size() == rep.unknowns.size();
    rep.transcript.push_back(std::string("oracle cross-check: ") + (*rep.oracle_agreement ? "agree" : "DISAGREE") +
                             " (" + std::to_string(o.members.size()) + " members)");
    if (!*rep.oracle_agreement) rep.downgrades.push_back("oracle disagreement");
  }
  rep.certified = rep.downgrades.empty();
  return rep;
}

}  // namespace pfc
