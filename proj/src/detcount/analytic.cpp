#include "detcount/analytic.hpp"

#include <cmath>
#include <cstdio>

#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"

namespace pfc {

namespace {

constexpr size_t kMaxStates = 400000;

bool polynomial_columns_dependent(const std::vector<Polynomial>& comps, const MonomialBasis& basis) {
  int nv = comps.front().nvars();
  std::vector<Polynomial> cols;
  std::map<MultiIndex, size_t> index;
  for (auto& a : basis.monomials()) {
    Polynomial p = Polynomial::constant(nv, 1);
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i]) p = p * comps[i].pow(static_cast<unsigned long>(a[i]));
    for (auto& [mono, c] : p.terms()) index.emplace(mono, index.size());
    cols.push_back(std::move(p));
  }
  std::vector<std::vector<Rational>> rows;
  for (auto& p : cols) {
    std::vector<Rational> row(index.size(), Rational(0));
    for (auto& [mono, c] : p.terms()) row[index.at(mono)] = c;
    rows.push_back(std::move(row));
  }
  return rational_kernel(rows, index.size()).rank < basis.size();
}

Rational beta_factorial(const MultiIndex& b) {
  BigInt f = 1;
  for (int e : b) f *= factorial(static_cast<unsigned long>(e));
  return Rational(f);
}

std::string log2_str(const Rational& q) {
  if (q <= 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "2^%.2f", std::log2(q.get_d()));
  return buf;
}

int total(const MultiIndex& b) {
  int s = 0;
  for (int e : b) s += e;
  return s;
}

}  // namespace

int required_order(size_t mu, int m) {
  if (mu == 0) return 1;
  return std::max(1, total(graded_exponents(m, mu).back()));
}

AnalyticChart analytic_chart(const AffineChart& chart, const std::vector<Expr>& target) {
  AnalyticChart a;
  a.m = chart.dim;
  a.r = chart.r;
  a.cert = chart.cert.value;
  std::vector<Polynomial> polys;
  for (Expr e : chart.compose(target)) {
    auto p = expand_polynomial(e, chart.dim);
    if (!p) return a;
    polys.push_back(std::move(*p));
  }
  a.polynomial = std::move(polys);
  return a;
}

AnalyticBound analytic_bound(const AnalyticChart& chart, const MonomialBasis& basis, const Rational& delta) {
  if (basis.nvars() != chart.m + 1) fail(ErrorCode::Dimension, "analytic_bound: basis must have m + 1 variables");
  if (chart.r < 1) fail(ErrorCode::InvalidArgument, "analytic_bound: r too small (need r >= 1)");
  if (!(delta > 0 && delta <= 1)) fail(ErrorCode::InvalidArgument, "analytic_bound: delta must lie in (0, 1]");
  AnalyticBound out;
  if (chart.polynomial && polynomial_columns_dependent(*chart.polynomial, basis)) {
    out.value = 0;
    out.structural_zero = true;
    return out;
  }
  const size_t mu = basis.size();
  const int d = basis.degree();
  std::vector<size_t> n(static_cast<size_t>(d + 1), 0);
  for (auto& a : basis.monomials()) ++n[static_cast<size_t>(total(a))];
  std::vector<size_t> stride(n.size());
  size_t states = 1;
  for (size_t a = 0; a < n.size(); ++a) {
    stride[a] = states;
    states *= n[a] + 1;
  }
  if (states > kMaxStates) fail(ErrorCode::Budget, "analytic_bound: basis too large for the assignment bound");

  const Interval B(chart.cert);
  const Interval half(delta / 2);
  const Interval root_mu(sqrt_upper(mu));
  std::vector<Interval> Bpow{Interval(1)};
  for (int a = 1; a <= d; ++a) Bpow.push_back(Bpow.back() * B);

  bool have = false;
  Rational best;
  for (int k = 1; k <= chart.r; ++k) {
    size_t count = static_cast<size_t>(binomial(static_cast<unsigned long>(k - 1 + chart.m),
                                                static_cast<unsigned long>(chart.m)).get_ui());
    std::vector<MultiIndex> betas = graded_exponents(chart.m, count);
    std::vector<Interval> rho(n.size());
    for (size_t a = 0; a < n.size(); ++a) {
      Interval t = Interval(static_cast<long>(a * static_cast<size_t>(chart.m))) * half;
      rho[a] = Bpow[a] * pow_int(t, k) / Interval(Rational(factorial(static_cast<unsigned long>(k)))) * root_mu;
    }
    std::vector<Interval> dp(states, Interval(0));
    dp[0] = Interval(1);
    for (auto& beta : betas) {
      int bt = total(beta);
      std::vector<Interval> coef(n.size());
      for (size_t a = 0; a < n.size(); ++a) {
        if (a == 0 && bt > 0) {
          coef[a] = Interval(0);
          continue;
        }
        coef[a] = Bpow[a] * pow_int(Interval(static_cast<long>(a)), bt) / Interval(beta_factorial(beta)) * root_mu *
                  pow_int(half, bt);
      }
      std::vector<Interval> next = dp;
      for (size_t s = 0; s < states; ++s) {
        if (dp[s].upper() <= 0) continue;
        size_t rest = s;
        for (size_t a = 0; a < n.size(); ++a) {
          size_t used = rest % (n[a] + 1);
          rest /= n[a] + 1;
          if (used == n[a] || coef[a].upper() <= 0) continue;
          mul_add(next[s + stride[a]], dp[s], coef[a] * Interval(static_cast<long>(n[a] - used)));
        }
      }
      dp = std::move(next);
    }
    Interval sum(0);
    for (size_t s = 0; s < states; ++s) {
      if (dp[s].upper() <= 0) continue;
      Interval term = dp[s];
      size_t rest = s;
      for (size_t a = 0; a < n.size(); ++a) {
        size_t used = rest % (n[a] + 1);
        rest /= n[a] + 1;
        if (used < n[a]) term = term * pow_int(rho[a], static_cast<long>(n[a] - used));
      }
      sum = sum + term;
    }
    Rational v = sum.upper();
    if (!have || v < best) {
      best = v;
      out.taylor_order = k;
      have = true;
    }
  }
  out.value = best;
  return out;
}

ParameterChoice choose_parameters(const ParameterInput& in) {
  if (in.m != 1 && in.m != 2) fail(ErrorCode::InvalidArgument, "choose_parameters: m must be 1 or 2");
  if (in.bound.H < 2) fail(ErrorCode::InvalidArgument, "choose_parameters: H must be at least 2");
  if (in.bound.g < 1) fail(ErrorCode::InvalidArgument, "choose_parameters: g must be positive");
  std::vector<Rational> scales = in.scales;
  if (scales.empty()) scales.assign(static_cast<size_t>(in.m + 1), Rational(1));
  if (static_cast<int>(scales.size()) != in.m + 1) fail(ErrorCode::Dimension, "choose_parameters: need m + 1 scales");

  // A point with coordinates of height <= H has common denominator <= H^{m+1}.
  BigInt H = BigInt(static_cast<unsigned long>(in.bound.H));
  BigInt H_eff = pow_z(H, static_cast<unsigned long>(in.m + 1));
  ParameterChoice pc;
  pc.m = in.m;

  auto finish = [&](int d, const MonomialBasis& basis, int r) {
    Thresholds t = thresholds(H_eff, d, basis.size(), in.m, in.bound.g, BigInt(1));
    Rational c = abs_q(basis.scaling_determinant(scales));
    pc.d = d;
    pc.mu = basis.size();
    pc.r = r;
    pc.threshold = t.dichotomy / c;
    pc.eps = t.perturbation / c;
    pc.threshold.canonicalize();
    pc.eps.canonicalize();
  };

  if (in.polynomial) {
    int D = in.polynomial->total_degree();
    if (D <= in.d_max) {
      int d = std::max(1, D);
      MonomialBasis basis(in.m + 1, d);
      finish(d, basis, std::min(in.r_max, required_order(basis.size(), in.m)));
      pc.structural = true;
      pc.bound = 0;
      pc.delta = 1;
      pc.transcript.push_back("polynomial graph of degree " + std::to_string(D) + ": d = " + std::to_string(d) +
                              ", every interpolation determinant vanishes");
      return pc;
    }
  }

  for (int d = 1; d <= in.d_max; d *= 2) {
    MonomialBasis basis(in.m + 1, d);
    int r = required_order(basis.size(), in.m);
    std::string head = "d = " + std::to_string(d) + ", mu = " + std::to_string(basis.size()) + ", r = " +
                       std::to_string(r);
    if (r > in.r_max) {
      pc.transcript.push_back(head + ": r exceeds r_max, skipped");
      continue;
    }
    finish(d, basis, r);
    Rational target = pc.threshold / 2;
    AnalyticChart generic{in.m, r, in.cert, std::nullopt};
    bool ok = false;
    try {
      for (int k = 0; k <= in.max_log2_inv_delta; ++k) {
        Rational delta(BigInt(1), BigInt(1) << static_cast<unsigned long>(k));
        AnalyticBound ab = analytic_bound(generic, basis, delta);
        if (ab.value < target) {
          pc.delta = delta;
          pc.log2_inv_delta = k;
          pc.bound = ab.value;
          ok = true;
          break;
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Budget) throw;
      pc.transcript.push_back(head + ": " + e.what());
      continue;
    }
    if (!ok) {
      pc.transcript.push_back(head + ": no delta >= 2^-" + std::to_string(in.max_log2_inv_delta) +
                              " brings the bound below threshold/2");
      continue;
    }
    pc.subboxes_per_chart = BigInt(1) << static_cast<unsigned long>(pc.log2_inv_delta * in.m);
    pc.transcript.push_back(head + ": accepted delta = 2^-" + std::to_string(pc.log2_inv_delta) + ", bound " +
                            log2_str(pc.bound) + " < threshold/2 = " + log2_str(target));
    return pc;
  }
  std::string frontier;
  for (auto& t : pc.transcript) frontier += "; " + t;
  fail(ErrorCode::Budget, "choose_parameters: search exhausted" + frontier);
}

}  // namespace pfc
