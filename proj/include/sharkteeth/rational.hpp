#pragma once

// Exact arithmetic used throughout the library. Both types are GMP values;
// mpq_class is kept canonical (reduced, positive denominator) after every
// operation we perform, so equality is structural.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace shark {

using BigInt = mpz_class;
using Rational = mpq_class;

Rational make_rational(const BigInt& num, const BigInt& den);
inline Rational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

/// Parses "p/q" or "p" (optional leading '-'). Throws Error{Parse} on anything else.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

BigInt pow2(unsigned long e);
Rational pow2_inv(unsigned long e);  // 2^{-e}

/// floor(log2(z)) for z >= 1.
unsigned long floor_log2(const BigInt& z);

/// Smallest rational of the form a/2^bits that is >= sqrt(x), x >= 0.
Rational sqrt_upper(const Rational& x, unsigned long bits = 32);

/// Fixed-point decimal with `digits` fractional digits, rounded half away from zero.
std::string to_decimal(const Rational& r, int digits);

double to_double(const Rational& r);

}  // namespace shark
