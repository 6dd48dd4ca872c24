#include "detcount/lll.hpp"

#include "numeric/error.hpp"

namespace pfc {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> star;
  std::vector<Rational> norm2;
  std::vector<std::vector<Rational>> mu;

  explicit GramSchmidt(const std::vector<IntVector>& b) {
    size_t n = b.size();
    star.resize(n);
    norm2.resize(n);
    mu.assign(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
      std::vector<Rational> v(b[i].begin(), b[i].end());
      std::vector<Rational> bi = v;
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(bi, star[j]) / norm2[j];
        for (size_t k = 0; k < v.size(); ++k) v[k] -= mu[i][j] * star[j][k];
      }
      norm2[i] = dot(v, v);
      if (norm2[i] == 0) fail(ErrorCode::Internal, "lll_reduce: basis vectors are linearly dependent");
      star[i] = std::move(v);
    }
  }
};

BigInt round_q(const Rational& q) {
  Rational h = q + Rational(1, 2);
  return floor_q(h);
}

}  // namespace

BigInt squared_norm(const IntVector& v) {
  BigInt s = 0;
  for (auto& z : v) s += z * z;
  return s;
}

std::vector<IntVector> lll_reduce(std::vector<IntVector> b, const Rational& delta) {
  size_t n = b.size();
  if (n <= 1) return b;
  GramSchmidt gs(b);
  size_t k = 1;
  while (k < n) {
    for (size_t j = k; j-- > 0;) {
      BigInt q = round_q(gs.mu[k][j]);
      if (q == 0) continue;
      for (size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[j][i];
      for (size_t i = 0; i < j; ++i) gs.mu[k][i] -= Rational(q) * gs.mu[j][i];
      gs.mu[k][j] -= Rational(q);
    }
    Rational lhs = gs.norm2[k];
    Rational rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = GramSchmidt(b);
      k = std::max<size_t>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace pfc
