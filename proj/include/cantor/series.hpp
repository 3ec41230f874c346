#pragma once

#include "cantor/enclosure.hpp"

namespace cantor {

// Certified enclosures of elementary functions at exact rational arguments.
// Partial sums are evaluated in exact rational arithmetic with explicit
// remainder bounds, then rounded outward onto a dyadic grid, so the returned
// interval always contains the true value. Widths come out near 2^-bits for
// arguments of moderate size.
//
// Remainder bounds used:
//   exp(-y), 0 <= y <= 1/2: alternating series, |R| <= first omitted term;
//     larger arguments are reduced by exp(-x) = exp(-x/2^k)^(2^k).
//   log m = 2 atanh(t), t = (m-1)/(m+1), m in [1,2):
//     R_n <= t^(2n+3) / ((2n+3)(1-t^2)); general x reduced by x = m 2^k.
//   sqrt(a/b) bracketed by the integer square root of a*b*4^p.

Enclosure exp_neg_enclosure(const Rational& x, unsigned bits);  // e^-x, x >= 0
Enclosure log_enclosure(const Rational& x, unsigned bits);      // ln x, x > 0
Enclosure log2_enclosure(unsigned bits);                        // ln 2
Enclosure sqrt_enclosure(const Rational& x, unsigned bits);     // x >= 0

}  // namespace cantor
