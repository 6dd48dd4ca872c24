#include "numeric/rational.hpp"

#include <cmath>
#include <cstdlib>

#include "numeric/error.hpp"

namespace pfc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_int(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) fail(ErrorCode::Parse, "malformed rational '" + std::string(whole) + "'");
  BigInt z(std::string(body), 10);
  return neg ? BigInt(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) fail(ErrorCode::Parse, "empty rational");
  if (text[0] == '~') {
    std::string body(text.substr(1));
    char* end = nullptr;
    double v = std::strtod(body.c_str(), &end);
    if (body.empty() || end != body.c_str() + body.size() || !std::isfinite(v))
      fail(ErrorCode::Parse, "malformed dyadic approximation '" + std::string(text) + "'");
    Rational q;
    mpq_set_d(q.get_mpq_t(), v);
    return q;
  }
  if (text.find_first_of(".eE") != std::string_view::npos)
    fail(ErrorCode::Parse, "decimal '" + std::string(text) +
                               "' needs a '~' prefix to be read as a dyadic approximation");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  BigInt num = parse_int(text.substr(0, slash), text);
  std::string_view den_s = text.substr(slash + 1);
  if (!all_digits(den_s)) fail(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  BigInt den(std::string(den_s), 10);
  if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const BigInt& z) { return z.get_str(10); }

BigInt height(const Rational& q) {
  BigInt a = abs(q.get_num());
  return a > q.get_den() ? a : BigInt(q.get_den());
}

BigInt floor_q(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil_q(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational floor_dyadic(const Rational& q, long bits) {
  BigInt scale = pow_z(2, static_cast<unsigned long>(bits));
  Rational r(floor_q(q * scale), scale);
  r.canonicalize();
  return r;
}

Rational ceil_dyadic(const Rational& q, long bits) {
  BigInt scale = pow_z(2, static_cast<unsigned long>(bits));
  Rational r(ceil_q(q * scale), scale);
  r.canonicalize();
  return r;
}

Rational pow_q(const Rational& q, long n) {
  if (n == 0) return 1;
  if (n < 0) {
    if (q == 0) fail(ErrorCode::Domain, "negative power of zero");
    Rational inv = 1 / q;
    return pow_q(inv, -n);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(n));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt pow_z(const BigInt& z, unsigned long n) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), n);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

long bit_length(const BigInt& z) {
  if (z == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

long ceil_log2(const Rational& q) {
  if (q <= 1) return 0;
  long k = bit_length(ceil_q(q)) - 1;
  while (Rational(pow_z(2, static_cast<unsigned long>(k))) < q) ++k;
  while (k > 0 && Rational(pow_z(2, static_cast<unsigned long>(k - 1))) >= q) --k;
  return k;
}

// Stern-Brocot descent.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  BigInt fl = floor_q(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo, hi in (fl, fl+1): recurse on reciprocals of fractional parts.
  Rational a = lo - fl, b = hi - fl;
  Rational inner = simplest_between(1 / b, 1 / a);
  Rational r = Rational(fl) + 1 / inner;
  r.canonicalize();
  return r;
}

Rational sqrt_upper(unsigned long n) {
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), BigInt(n).get_mpz_t());
  if (s * s == n) return Rational(s);
  // (s+1) >= sqrt(n); refine with a 2^-32 grid.
  BigInt scaled;
  BigInt big = BigInt(n) * pow_z(2, 64);
  mpz_sqrt(scaled.get_mpz_t(), big.get_mpz_t());
  Rational r(scaled + 1, pow_z(2, 32));
  r.canonicalize();
  return r;
}

Rational exp_upper(unsigned long k) {
  // e < 27183/10000
  return pow_q(Rational(27183, 10000), static_cast<long>(k));
}

}  // namespace pfc
