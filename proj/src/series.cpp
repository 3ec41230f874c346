#include "cantor/series.hpp"

#include "cantor/errors.hpp"

namespace cantor {

Enclosure exp_neg_enclosure(const Rational& x, unsigned bits) {
  if (x < 0) throw DomainError("exp_neg_enclosure: negative argument");
  if (x == 0) return Enclosure(Rational(1));

  // Reduce to y = x/2^k <= 1/2, then square the enclosure k times.
  long k = 0;
  Rational y = x;
  Rational half(1, 2);
  while (y > half) {
    y /= 2;
    ++k;
  }
  unsigned work = bits + 8 + 2 * static_cast<unsigned>(k);
  Rational bound = pow2(-static_cast<long>(work));

  // Alternating series with decreasing magnitudes: the truth lies between any
  // partial sum and the next one.
  Rational sum(0), term(1);
  int i = 0;
  Rational lo, hi;
  while (true) {
    sum += term;
    ++i;
    term *= -y;
    term /= i;
    if (abs(term) <= bound) {
      if (term < 0) {
        lo = sum + term;
        hi = sum;
      } else {
        lo = sum;
        hi = sum + term;
      }
      break;
    }
  }

  Enclosure e = outward_dyadic(Enclosure(lo, hi), work);
  for (long j = 0; j < k; ++j) {
    e = outward_dyadic(e * e, work);
  }
  // exp(-x) lies in (0, 1] for x >= 0.
  return intersect(e, Enclosure(Rational(0), Rational(1)));
}

// atanh(t) = sum t^(2i+1)/(2i+1) with remainder <= t^(2n+3)/((2n+3)(1-t^2)),
// valid for 0 <= t < 1. Returns [sum, sum + remainder_bound].
static Enclosure atanh_enclosure(const Rational& t, unsigned work) {
  if (t == 0) return Enclosure(Rational(0));
  Rational t2 = t * t;
  Rational one_minus_t2 = 1 - t2;
  Rational bound = pow2(-static_cast<long>(work));
  Rational sum(0);
  Rational power = t;  // t^(2i+1)
  long odd = 1;
  while (true) {
    sum += power / odd;
    power *= t2;
    odd += 2;
    Rational rem = power / (odd * one_minus_t2);
    if (rem <= bound) {
      return Enclosure(sum, sum + rem);
    }
  }
}

Enclosure log2_enclosure(unsigned bits) {
  // log 2 = 2 atanh(1/3).
  unsigned work = bits + 8;
  Enclosure a = atanh_enclosure(Rational(1, 3), work);
  return outward_dyadic(a + a, bits + 4);
}

Enclosure log_enclosure(const Rational& x, unsigned bits) {
  if (x <= 0) throw DomainError("log_enclosure: non-positive argument");
  if (x == 1) return Enclosure(Rational(0));

  long k = 0;
  Rational m = x;
  while (m >= 2) {
    m /= 2;
    ++k;
  }
  while (m < 1) {
    m *= 2;
    --k;
  }
  unsigned work = bits + 8;
  Rational t = (m - 1) / (m + 1);  // in [0, 1/3)
  Enclosure a = atanh_enclosure(t, work);
  Enclosure result = a + a;
  if (k != 0) {
    result = result + log2_enclosure(work) * Enclosure(Rational(k));
  }
  return outward_dyadic(result, bits + 4);
}

Enclosure sqrt_enclosure(const Rational& x, unsigned bits) {
  if (x < 0) throw DomainError("sqrt_enclosure: negative argument");
  if (x == 0) return Enclosure(Rational(0));

  // sqrt(a/b) = sqrt(a*b)/b; bracket sqrt(a*b*4^p) by its integer square root.
  Integer ab = x.get_num() * x.get_den();
  Integer scaled = ab << (2 * bits);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Integer den = x.get_den() << bits;
  Rational lo(s, den);
  lo.canonicalize();
  if (s * s == scaled) {
    return Enclosure(lo);
  }
  Rational hi(s + 1, den);
  hi.canonicalize();
  return Enclosure(lo, hi);
}

}  // namespace cantor
