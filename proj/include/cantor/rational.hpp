#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace cantor {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr unsigned kDefaultPrecisionBits = 64;
inline constexpr unsigned kMinPrecisionBits = 32;
inline constexpr unsigned kMaxPrecisionBits = 256;

// 2^k as an exact rational; k may be negative.
Rational pow2(long k);

// Largest multiple of 2^-bits that is <= x, resp. smallest that is >= x.
// Keeps enclosure endpoints on a dyadic grid of bounded size.
Rational floor_dyadic(const Rational& x, unsigned bits);
Rational ceil_dyadic(const Rational& x, unsigned bits);

// Nearest integer to x with ties broken to the even integer.
Integer round_half_even(const Rational& x);

// Parses "p/q", "p", or a plain decimal such as "-0.25" into an exact value.
Rational parse_rational(const std::string& text);

// Canonical numerator/denominator as decimal strings, denominator positive.
std::pair<std::string, std::string> to_strings(const Rational& x);

// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rational& x, int significant_digits = 12);

double to_double(const Rational& x);

// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

}  // namespace cantor
