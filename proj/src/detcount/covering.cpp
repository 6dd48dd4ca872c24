#include "detcount/covering.hpp"

#include <algorithm>
#include <set>

#include "detcount/analytic.hpp"
#include "detcount/lll.hpp"
#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"

namespace pfc {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::ExactKernel:
      return "exact-kernel";
    case Provenance::DeterminantCertified:
      return "determinant-certified";
    case Provenance::SiegelConstructed:
      return "siegel-constructed";
    case Provenance::GraphIdeal:
      return "graph-ideal";
  }
  return "unknown";
}

CoveringPolynomial::CoveringPolynomial(MonomialBasis b, std::vector<BigInt> c, Provenance p)
    : basis(std::move(b)), coeffs(std::move(c)), provenance(p) {
  if (coeffs.size() != basis.size()) fail(ErrorCode::Dimension, "CoveringPolynomial: coefficient count mismatch");
  N = 0;
  for (auto& z : coeffs) {
    BigInt a = abs(z);
    if (a > N) N = a;
  }
}

bool CoveringPolynomial::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const BigInt& z) { return z == 0; });
}

Rational CoveringPolynomial::eval(const std::vector<Rational>& p) const {
  std::vector<Rational> row = basis.evaluate(p);
  Rational s = 0;
  for (size_t i = 0; i < row.size(); ++i)
    if (coeffs[i] != 0) s += Rational(coeffs[i]) * row[i];
  return s;
}

Interval CoveringPolynomial::eval(const std::vector<Interval>& p) const { return to_polynomial().eval(p); }

Polynomial CoveringPolynomial::to_polynomial() const {
  Polynomial P(basis.nvars());
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) P.add_term(basis[i], Rational(coeffs[i]));
  return P;
}

Expr CoveringPolynomial::on_graph(Expr g) const {
  int last = basis.nvars() - 1;
  Expr sum = ex::constant(0L);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Expr term = ex::constant(Rational(coeffs[i]));
    const MultiIndex& a = basis[i];
    for (int v = 0; v <= last; ++v) {
      int e = a[static_cast<size_t>(v)];
      if (!e) continue;
      Expr base = v == last ? g : ex::var(v);
      term = ex::mul(term, e == 1 ? base : ex::pow_int(base, e));
    }
    sum = ex::add(sum, term);
  }
  return sum;
}

std::string CoveringPolynomial::str() const {
  std::vector<std::string> names = basis.nvars() == 2 ? std::vector<std::string>{"x", "y"}
                                   : basis.nvars() == 3 ? std::vector<std::string>{"x", "y", "z"}
                                                        : std::vector<std::string>{};
  if (names.empty())
    for (int i = 0; i < basis.nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
  return to_polynomial().str(names);
}

bool CoveringPolynomial::same_hypersurface(const CoveringPolynomial& o) const {
  if (basis.monomials() != o.basis.monomials()) return false;
  // a * o == b * this for the first nonzero pair
  size_t k = 0;
  while (k < coeffs.size() && coeffs[k] == 0) ++k;
  if (k == coeffs.size() || o.coeffs[k] == 0) return false;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] * o.coeffs[k] != o.coeffs[i] * coeffs[k]) return false;
  return true;
}

CoveringPolynomial fit_exact_kernel(const std::vector<RationalPoint>& points, const MonomialBasis& basis) {
  std::vector<std::vector<Rational>> rows;
  for (auto& p : points) rows.push_back(basis.evaluate(p.coords));
  KernelResult k = rational_kernel(rows, basis.size());
  if (k.kernel.empty())
    fail(ErrorCode::Budget, "fit_covering_polynomial: evaluation matrix has full rank " + std::to_string(k.rank) +
                                " (degree too small for these points)");
  std::vector<BigInt> c = primitive_integer_vector(k.kernel.front());
  // the free column carries the largest index among the nonzero entries
  size_t top = c.size();
  while (top-- > 0 && c[top] == 0) {
  }
  if (c[top] < 0)
    for (auto& z : c) z = -z;
  return CoveringPolynomial(basis, std::move(c), Provenance::ExactKernel);
}

namespace {

int deg(const MultiIndex& a) {
  int s = 0;
  for (int e : a) s += e;
  return s;
}

struct JetTable {
  JetLayout::Ptr layout;
  std::vector<Jet<Interval>> mono;  // psi^alpha, in basis order
};

JetTable monomial_jets(const std::vector<Expr>& psi, const MonomialBasis& basis, std::vector<Jet<Interval>> seeds) {
  JetEvaluator ev(std::move(seeds));
  std::vector<Jet<Interval>> comps;
  for (Expr e : psi) comps.push_back(ev.eval(e));
  JetTable t;
  t.layout = comps.front().layout();
  std::vector<std::vector<Jet<Interval>>> pw(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) {
    pw[i].push_back(Jet<Interval>::constant(t.layout, Interval(1)));
    for (int e = 1; e <= basis.degree(); ++e) pw[i].push_back(jet_mul(pw[i].back(), comps[i]));
  }
  for (auto& a : basis.monomials()) {
    Jet<Interval> j = Jet<Interval>::constant(t.layout, Interval(1));
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i]) j = jet_mul(j, pw[i][static_cast<size_t>(a[i])]);
    t.mono.push_back(std::move(j));
  }
  return t;
}

Jet<Interval> combine(const JetTable& t, const std::vector<BigInt>& p) {
  Jet<Interval> s = Jet<Interval>::constant(t.layout, Interval(0));
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) s = s + t.mono[i] * Interval(Rational(p[i]));
  return s;
}

// sup |P o psi| over the box from Taylor forms of every order up to the jet order.
Rational taylor_sup(const Jet<Interval>& center, const Jet<Interval>& box, const std::vector<Rational>& half) {
  const auto& L = *center.layout();
  int order = L.order();
  std::optional<Rational> best;
  for (int k = 1; k <= order; ++k) {
    Interval s(0);
    for (size_t i = 0; i < L.size(); ++i) {
      const MultiIndex& b = L.alpha(i);
      int d = deg(b);
      if (d > k) continue;
      Rational w = 1;
      for (size_t v = 0; v < b.size(); ++v) w *= pow_q(half[v], b[v]);
      const Interval& c = d < k ? center[i] : box[i];
      s = s + Interval(abs(c).upper() * w);
    }
    Rational v = s.upper();
    if (!best || v < *best) best = v;
  }
  return *best;
}

BigInt round_to_int(const Rational& q) { return floor_q(q + Rational(1, 2)); }

}  // namespace

SiegelFit fit_siegel(const std::vector<RationalPoint>& points, const MonomialBasis& basis, const SiegelChart& chart) {
  const int m = static_cast<int>(chart.box.size());
  if (basis.nvars() != m + 1 || static_cast<int>(chart.psi.size()) != m + 1)
    fail(ErrorCode::Dimension, "fit_siegel: chart and basis dimensions disagree");
  const size_t mu = basis.size();
  std::vector<Rational> center, half;
  for (auto& iv : chart.box) {
    center.push_back(iv.mid());
    Rational h = iv.width() / 2;
    h.canonicalize();
    half.push_back(h);
  }
  // number of Taylor conditions, kept below mu
  int kmax = 1;
  while (kmax < chart.max_taylor &&
         binomial(static_cast<unsigned long>(kmax + m), static_cast<unsigned long>(m)) < BigInt(mu))
    ++kmax;
  const int jet_order = kmax + 1;
  JetTable at_center = monomial_jets(chart.psi, basis, box_seeds(point_intervals(center), jet_order));
  JetTable over_box = monomial_jets(chart.psi, basis, box_seeds(to_intervals(chart.box), jet_order));
  const auto& L = *at_center.layout;

  SiegelFit best;
  bool have = false;
  Rational best_ratio;
  for (int K = 1; K <= kmax; ++K) {
    std::vector<size_t> cols;
    for (size_t i = 0; i < L.size(); ++i)
      if (deg(L.alpha(i)) < K) cols.push_back(i);
    if (cols.size() >= mu) break;
    for (int bits : {16, 32, 48, 64, 96, 128, 192, 256}) {
      Rational W(BigInt(1) << static_cast<unsigned long>(bits));
      std::vector<IntVector> lattice;
      for (size_t a = 0; a < mu; ++a) {
        IntVector row(mu, BigInt(0));
        row[a] = 1;
        for (size_t c : cols) {
          const MultiIndex& b = L.alpha(c);
          Rational w = W;
          for (size_t v = 0; v < b.size(); ++v) w *= pow_q(half[v], b[v]);
          row.push_back(round_to_int(at_center.mono[a][c].mid() * w));
        }
        lattice.push_back(std::move(row));
      }
      for (auto& v : lll_reduce(std::move(lattice))) {
        std::vector<BigInt> p(v.begin(), v.begin() + static_cast<long>(mu));
        if (std::all_of(p.begin(), p.end(), [](const BigInt& z) { return z == 0; })) continue;
        CoveringPolynomial P(basis, p, Provenance::SiegelConstructed);
        Rational sup = taylor_sup(combine(at_center, p), combine(over_box, p), half);
        Rational R = thresholds(BigInt(static_cast<unsigned long>(chart.bound.H)), basis.degree(), mu, m,
                                chart.bound.g, std::max(P.N, BigInt(1)))
                         .liouville;
        Rational ratio = sup / R;
        bool ok = 2 * sup < R;
        if (!have || (ok && !best.certified) || (ok == best.certified && ratio < best_ratio)) {
          best.P = P;
          best.certified = ok;
          best.sup_bound = sup;
          best.liouville = R;
          best.conditions = static_cast<int>(cols.size());
          best.weight_bits = bits;
          best_ratio = ratio;
          have = true;
        }
      }
      if (best.certified) break;
    }
    if (best.certified) break;
  }
  if (best.certified) {
    for (auto& q : points) {
      if (best.P.eval(q.coords) != 0)
        fail(ErrorCode::Internal, "fit_siegel: certified polynomial does not vanish at a point of the box");
    }
  }
  if (best.P.N > 0) {
    size_t top = best.P.coeffs.size();
    while (top-- > 0 && best.P.coeffs[top] == 0) {
    }
    if (best.P.coeffs[top] < 0)
      for (auto& z : best.P.coeffs) z = -z;
  }
  return best;
}

CoveringPolynomial fit_covering_polynomial(const std::vector<RationalPoint>& points, const MonomialBasis& basis,
                                           FitMode mode, const SiegelChart* chart) {
  for (auto& p : points)
    if (static_cast<int>(p.dim()) != basis.nvars())
      fail(ErrorCode::Dimension, "fit_covering_polynomial: point dimension mismatch");
  if (mode == FitMode::ExactKernel) return fit_exact_kernel(points, basis);
  if (!chart) fail(ErrorCode::InvalidArgument, "fit_covering_polynomial: siegel mode needs a chart");
  SiegelFit f = fit_siegel(points, basis, *chart);
  if (!f.certified) fail(ErrorCode::NotCertified, "fit_covering_polynomial: lattice polynomial not certified on box");
  return f.P;
}

namespace {

Interval mean_value(Expr h, Expr dh, const RInterval& I) {
  Interval direct = eval_interval(h, {Interval(I.lo, I.hi)});
  Rational m = I.mid();
  Interval mv = eval_point(h, {m}) + eval_interval(dh, {Interval(I.lo, I.hi)}) * (Interval(I.lo, I.hi) - Interval(m));
  if (auto both = intersect(direct, mv)) return *both;
  return direct;
}

// -1, 0, +1 or nullopt when undecided
std::optional<int> sign_at(Expr h, const Rational& x) {
  if (auto v = eval_exact(h, {x})) return *v > 0 ? 1 : (*v < 0 ? -1 : 0);
  for (mpfr_prec_t prec = working_precision(); prec <= 2048; prec *= 2) {
    PrecisionScope scope(prec);
    Interval v = eval_point(h, {x});
    if (v.positive()) return 1;
    if (v.negative()) return -1;
  }
  return std::nullopt;
}

}  // namespace

IntersectionResult intersect_with_graph(const ExprFn& f, const CoveringPolynomial& P, const Box& box_in, int max_depth) {
  const int m = f.arity();
  if (P.basis.nvars() != m + 1) fail(ErrorCode::Dimension, "intersect_with_graph: polynomial has wrong arity");
  if (static_cast<int>(box_in.size()) != m) fail(ErrorCode::Dimension, "intersect_with_graph: box dimension mismatch");
  if (P.is_zero()) fail(ErrorCode::InvalidArgument, "intersect_with_graph: zero polynomial");
  Box box = box_in;
  for (size_t i = 0; i < box.size(); ++i) {
    box[i].lo = std::max(box[i].lo, f.domain()[i].lo);
    box[i].hi = std::min(box[i].hi, f.domain()[i].hi);
    if (box[i].lo > box[i].hi) return {};
  }
  IntersectionResult res;
  if (auto fp = expand_polynomial(f.tree(), m)) {
    Polynomial comp(m);
    const Polynomial full = P.to_polynomial();
    for (auto& [a, c] : full.terms()) {
      Polynomial t = Polynomial::constant(m, c);
      for (int v = 0; v < m; ++v)
        if (a[static_cast<size_t>(v)]) t = t * Polynomial::variable(m, v).pow(static_cast<unsigned long>(a[v]));
      if (a[static_cast<size_t>(m)]) t = t * fp->pow(static_cast<unsigned long>(a[static_cast<size_t>(m)]));
      comp = comp + t;
    }
    if (comp.is_zero()) {
      res.arc = true;
      return res;
    }
  }
  Expr h = P.on_graph(f.tree());

  if (m == 2) {
    // zero locus cover: boxes whose enclosure keeps 0 after subdivision
    std::vector<std::pair<Box, int>> work{{box, 0}};
    const int depth2 = std::min(max_depth, 8);
    while (!work.empty()) {
      auto [b, dpt] = work.back();
      work.pop_back();
      if (!eval_interval(h, to_intervals(b)).contains_zero()) continue;
      if (dpt >= depth2) {
        ++res.zero_locus_boxes;
        continue;
      }
      Rational mx = b[0].mid(), my = b[1].mid();
      for (int q = 0; q < 4; ++q) {
        Box c = b;
        if (q & 1) c[0].lo = mx; else c[0].hi = mx;
        if (q & 2) c[1].lo = my; else c[1].hi = my;
        work.push_back({c, dpt + 1});
      }
    }
    res.count_lo = 0;
    if (res.zero_locus_boxes == 0) res.count_hi = 0;
    return res;
  }

  Expr dh = derive(h, 0);
  std::vector<Expr> ders{h, dh};
  // e is an exact zero and h^(j)(e) = 0 for j < k while h^(k) keeps its sign
  // on I: then e is the only zero of h in I.
  auto lone_zero = [&](const Rational& e, const RInterval& I) {
    for (size_t k = 1; k <= 4; ++k) {
      if (ders.size() <= k) ders.push_back(derive(ders.back(), 0));
      if (eval_interval(ders[k], {Interval(I.lo, I.hi)}).positive() ||
          eval_interval(ders[k], {Interval(I.lo, I.hi)}).negative())
        return true;
      auto v = eval_exact(ders[k], {e});
      if (!v || *v != 0) return false;
    }
    return false;
  };
  std::set<Rational> exact_roots;
  std::vector<RInterval> open_roots;
  std::vector<std::pair<RInterval, int>> work{{box[0], 0}};
  while (!work.empty()) {
    auto [I, dpt] = work.back();
    work.pop_back();
    if (I.lo == I.hi) {
      if (auto s = sign_at(h, I.lo); s && *s == 0) exact_roots.insert(I.lo);
      else if (!s) res.undecided.push_back({I});
      continue;
    }
    if (!mean_value(h, dh, I).contains_zero()) continue;
    bool lone = false;
    for (const Rational* e : {&I.lo, &I.hi}) {
      auto s0 = sign_at(h, *e);
      if (s0 && *s0 == 0 && lone_zero(*e, I)) {
        exact_roots.insert(*e);
        lone = true;
        break;
      }
    }
    if (lone) continue;
    Interval slope = eval_interval(dh, {Interval(I.lo, I.hi)});
    if (!slope.contains_zero()) {
      auto sl = sign_at(h, I.lo), sh = sign_at(h, I.hi);
      if (sl && sh) {
        if (*sl == 0) exact_roots.insert(I.lo);
        else if (*sh == 0) exact_roots.insert(I.hi);
        else if (*sl != *sh) open_roots.push_back(I);
        continue;
      }
    }
    if (dpt >= max_depth) {
      res.undecided.push_back({I});
      continue;
    }
    Rational mid = I.mid();
    work.push_back({{I.lo, mid}, dpt + 1});
    work.push_back({{mid, I.hi}, dpt + 1});
  }
  for (auto& r : exact_roots) res.isolating.push_back({r, r});
  for (auto& I : open_roots) res.isolating.push_back(I);
  std::sort(res.isolating.begin(), res.isolating.end(),
            [](const RInterval& a, const RInterval& b) { return a.lo < b.lo; });
  res.count_lo = res.isolating.size();
  if (res.undecided.empty()) res.count_hi = res.isolating.size();
  return res;
}

}  // namespace pfc
