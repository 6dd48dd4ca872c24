#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace pfc {

using BigInt = mpz_class;
using Rational = mpq_class;

// Accepts "a", "a/b", and "~d.ddd" (decimal marked as a dyadic approximation,
// converted to the nearest binary64 value). Plain decimals are rejected.
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

BigInt height(const Rational& q);
BigInt floor_q(const Rational& q);
BigInt ceil_q(const Rational& q);
Rational abs_q(const Rational& q);

// floor(q * 2^bits) / 2^bits and the matching ceiling.
Rational floor_dyadic(const Rational& q, long bits);
Rational ceil_dyadic(const Rational& q, long bits);

Rational pow_q(const Rational& q, long n);
BigInt pow_z(const BigInt& z, unsigned long n);
BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

// Number of bits of |z| (0 for z = 0).
long bit_length(const BigInt& z);
// Smallest k >= 0 with 2^k >= q (q > 0), i.e. ceil(log2 q) clamped at 0.
long ceil_log2(const Rational& q);

// Simplest rational (least denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

// Rational upper bound for sqrt(n).
Rational sqrt_upper(unsigned long n);

// Rational upper bound for e^k, k >= 0.
Rational exp_upper(unsigned long k);

}  // namespace pfc
