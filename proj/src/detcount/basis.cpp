#include "detcount/basis.hpp"

#include <functional>

#include "numeric/error.hpp"

namespace pfc {

namespace {

void exponents_of_degree(int nvars, int k, std::vector<MultiIndex>& out) {
  MultiIndex a(static_cast<size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      a[static_cast<size_t>(i)] = left;
      out.push_back(a);
      return;
    }
    for (int e = left; e >= 0; --e) {
      a[static_cast<size_t>(i)] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, k);
}

BigInt lcm_den(const std::vector<Rational>& row) {
  BigInt l = 1;
  for (auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

// Bareiss on an integer matrix; destroys m.
BigInt bareiss(std::vector<std::vector<BigInt>>& m) {
  size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  BigInt d = m[n - 1][n - 1];
  return sign > 0 ? d : BigInt(-d);
}

}  // namespace

std::vector<MultiIndex> graded_exponents(int nvars, size_t count) {
  std::vector<MultiIndex> out;
  for (int k = 0; out.size() < count; ++k) exponents_of_degree(nvars, k, out);
  out.resize(count);
  return out;
}

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1) fail(ErrorCode::InvalidArgument, "MonomialBasis: nvars must be positive");
  if (degree < 0) fail(ErrorCode::InvalidArgument, "MonomialBasis: negative degree");
  for (int k = 0; k <= degree; ++k) exponents_of_degree(nvars, k, monos_);
}

std::vector<Rational> MonomialBasis::evaluate(const std::vector<Rational>& p) const {
  if (static_cast<int>(p.size()) != nvars_) fail(ErrorCode::Dimension, "MonomialBasis: point dimension mismatch");
  std::vector<std::vector<Rational>> pw(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    pw[i].push_back(Rational(1));
    for (int e = 1; e <= degree_; ++e) pw[i].push_back(pw[i].back() * p[i]);
  }
  std::vector<Rational> row;
  row.reserve(monos_.size());
  for (auto& a : monos_) {
    Rational v = 1;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i]) v *= pw[i][static_cast<size_t>(a[i])];
    row.push_back(v);
  }
  return row;
}

Rational MonomialBasis::scaling_determinant(const std::vector<Rational>& s) const {
  if (static_cast<int>(s.size()) != nvars_) fail(ErrorCode::Dimension, "scaling_determinant: dimension mismatch");
  Rational c = 1;
  for (size_t i = 0; i < s.size(); ++i) {
    long e = 0;
    for (auto& a : monos_) e += a[i];
    c *= pow_q(s[i], e);
  }
  return c;
}

Rational determinant(std::vector<std::vector<Rational>> rows) {
  size_t n = rows.size();
  for (auto& r : rows)
    if (r.size() != n) fail(ErrorCode::Dimension, "determinant: matrix is not square");
  Rational scale = 1;
  std::vector<std::vector<BigInt>> m(n);
  for (size_t i = 0; i < n; ++i) {
    BigInt l = lcm_den(rows[i]);
    scale *= Rational(l);
    for (auto& q : rows[i]) {
      Rational v = q * Rational(l);
      m[i].push_back(v.get_num());
    }
  }
  Rational d(bareiss(m));
  d /= scale;
  return d;
}

Rational interp_determinant(const std::vector<RationalPoint>& points, const MonomialBasis& basis) {
  if (points.size() != basis.size())
    fail(ErrorCode::Dimension, "interp_determinant: need exactly mu = " + std::to_string(basis.size()) + " points");
  std::vector<std::vector<Rational>> rows;
  for (auto& p : points) rows.push_back(basis.evaluate(p.coords));
  return determinant(std::move(rows));
}

KernelResult rational_kernel(const std::vector<std::vector<Rational>>& rows_in, size_t ncols) {
  std::vector<std::vector<Rational>> a = rows_in;
  for (auto& r : a)
    if (r.size() != ncols) fail(ErrorCode::Dimension, "rational_kernel: ragged matrix");
  KernelResult res;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < a.size(); ++col) {
    size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (size_t j = col; j < ncols; ++j) a[i][j] -= f * a[row][j];
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  std::vector<bool> is_pivot(ncols, false);
  for (size_t c : res.pivots) is_pivot[c] = true;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (size_t k = 0; k < res.pivots.size(); ++k) v[res.pivots[k]] = -a[k][f];
    res.kernel.push_back(std::move(v));
  }
  return res;
}

std::vector<BigInt> primitive_integer_vector(const std::vector<Rational>& v) {
  BigInt l = lcm_den(v);
  std::vector<BigInt> out;
  BigInt g = 0;
  for (auto& q : v) {
    Rational s = q * Rational(l);
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  return out;
}

Thresholds thresholds(const BigInt& H, int d, size_t mu, int m, int g, const BigInt& N) {
  if (H < 1 || d < 1 || mu < 1 || m < 1 || g < 1 || N < 1)
    fail(ErrorCode::InvalidArgument, "thresholds: all arguments must be positive");
  Thresholds t;
  BigInt hd = pow_z(H, static_cast<unsigned long>(d) * mu);
  t.dichotomy = Rational(BigInt(1), hd);
  t.perturbation = t.dichotomy / (2 * Rational(d) * Rational(factorial(mu + 2)));
  BigInt base = pow_z(BigInt(d), static_cast<unsigned long>(m + 1)) * N *
                pow_z(H, static_cast<unsigned long>(d) * static_cast<unsigned long>(m + 1));
  t.liouville = Rational(BigInt(1), pow_z(base, static_cast<unsigned long>(g)));
  return t;
}

}  // namespace pfc
