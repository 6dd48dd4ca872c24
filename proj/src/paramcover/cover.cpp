#include <algorithm>
#include <queue>

#include "numeric/error.hpp"
#include "paramcover/atlas.hpp"

namespace pfc {

namespace {

// Radical inverse of k in base b: an exact rational in [0, 1).
Rational van_der_corput(uint64_t k, unsigned b) {
  Rational q = 0, scale = Rational(1, b);
  while (k) {
    q += scale * static_cast<unsigned long>(k % b);
    scale /= b;
    k /= b;
  }
  return q;
}

// Lower bound of the distance between a point enclosure and an interval.
Rational gap(const Interval& p, const Interval& s) {
  if (p.lower() > s.upper()) return p.lower() - s.upper();
  if (s.lower() > p.upper()) return s.lower() - p.upper();
  return 0;
}

Rational far(const Interval& p, const Interval& s) {
  Rational a = s.upper() - p.lower(), b = p.upper() - s.lower();
  return abs_q(a) > abs_q(b) ? abs_q(a) : abs_q(b);
}

struct ChartData {
  std::vector<Expr> psi;
  std::vector<Interval> hull;
  int dim;
};

Rational lower_distance(const std::vector<Interval>& p, const std::vector<Interval>& img) {
  Rational d = 0;
  for (size_t j = 0; j < p.size(); ++j) {
    Rational g = gap(p[j], img[j]);
    if (g > d) d = g;
  }
  return d;
}

Rational upper_distance(const std::vector<Interval>& p, const std::vector<Interval>& img) {
  Rational d = 0;
  for (size_t j = 0; j < p.size(); ++j) {
    Rational g = far(p[j], img[j]);
    if (g > d) d = g;
  }
  return d;
}

std::vector<Interval> eval_all(const std::vector<Expr>& fs, const std::vector<Interval>& box) {
  IntervalEvaluator ev(box);
  std::vector<Interval> out;
  for (Expr f : fs) out.push_back(ev.eval(f));
  return out;
}

// Branch and bound for min_s ||p - psi(s)||_inf; returns an upper bound.
Rational chart_distance(const ChartData& c, const std::vector<Interval>& p, Rational best, const Rational& tol) {
  struct Node {
    std::vector<Interval> box;
    Rational lb;
    bool operator<(const Node& o) const { return lb > o.lb; }
  };
  std::priority_queue<Node> q;
  std::vector<Interval> root(static_cast<size_t>(c.dim), Interval(Rational(0), Rational(1)));
  q.push({root, lower_distance(p, c.hull)});
  int evals = 0;
  while (!q.empty() && evals < 400) {
    Node n = q.top();
    q.pop();
    if (n.lb >= best || best - n.lb <= tol) break;
    std::vector<Interval> mid;
    for (auto& b : n.box) mid.emplace_back(b.mid());
    Rational ub = upper_distance(p, eval_all(c.psi, mid));
    if (ub < best) best = ub;
    size_t axis = 0;
    for (size_t a = 1; a < n.box.size(); ++a)
      if (n.box[a].width() > n.box[axis].width()) axis = a;
    Rational m = n.box[axis].mid();
    for (int side = 0; side < 2; ++side) {
      auto child = n.box;
      child[axis] = side ? Interval(m, n.box[axis].upper()) : Interval(n.box[axis].lower(), m);
      Rational lb = lower_distance(p, eval_all(c.psi, child));
      ++evals;
      if (lb < best) q.push({child, lb});
    }
  }
  return best;
}

}  // namespace

CoverReport verify_cover(const Atlas& atlas, const Rational& eps, size_t n_samples, uint64_t seed) {
  CoverReport rep;
  rep.samples = n_samples;
  std::vector<ChartData> charts;
  for (size_t i = 0; i < atlas.charts.size(); ++i) {
    ChartData cd;
    cd.dim = atlas.charts[i].dim;
    cd.psi = atlas.charts[i].compose(atlas.chart_target(i));
    cd.hull = eval_all(cd.psi, std::vector<Interval>(static_cast<size_t>(cd.dim), Interval(Rational(0), Rational(1))));
    charts.push_back(std::move(cd));
  }
  const unsigned bases[2] = {2, 3};
  Rational tol = eps / 64;
  for (size_t k = 0; k < n_samples; ++k) {
    std::vector<Rational> x;
    for (int d = 0; d < atlas.dim; ++d) x.push_back(van_der_corput(seed + k + 1, bases[d]));
    std::vector<Interval> p;
    for (Expr f : atlas.target) p.push_back(eval_point(f, x));

    Rational best = 1000;
    // Fast path: a chart whose parameter preimage contains the sample.
    for (size_t i = 0; i < atlas.charts.size() && best > tol; ++i) {
      const AffineChart& ch = atlas.charts[i];
      std::vector<Interval> s;
      bool inside = true;
      if (ch.piece >= 0) {
        const C1Piece& pc = atlas.pieces[static_cast<size_t>(ch.piece)];
        if (!pc.domain.contains(x[0])) continue;
        Interval w = p[static_cast<size_t>(pc.dominant)];
        Interval t = (w - Interval(ch.offset[0])) / Interval(ch.scale[0]);
        if (t.lower() < 0 || t.upper() > 1) continue;
        s.push_back(t);
      } else {
        for (int d = 0; d < ch.dim && inside; ++d) {
          if (!ch.image[static_cast<size_t>(d)].contains(x[static_cast<size_t>(d)])) inside = false;
          s.emplace_back((x[static_cast<size_t>(d)] - ch.offset[static_cast<size_t>(d)]) / ch.scale[static_cast<size_t>(d)]);
        }
        if (!inside) continue;
      }
      Rational ub = upper_distance(p, eval_all(charts[i].psi, s));
      if (ub < best) best = ub;
    }
    if (best > tol) {
      std::vector<std::pair<double, size_t>> order;
      for (size_t i = 0; i < charts.size(); ++i) order.emplace_back(lower_distance(p, charts[i].hull).get_d(), i);
      std::sort(order.begin(), order.end());
      for (auto& [lb, i] : order) {
        if (Rational(lb) >= best) break;
        best = chart_distance(charts[i], p, best, tol);
      }
    }
    if (best > rep.max_observed_distance) rep.max_observed_distance = best;
    if (best > eps) ++rep.failures;
  }
  return rep;
}

}  // namespace pfc
