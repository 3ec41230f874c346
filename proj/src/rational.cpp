#include "cantor/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

Rational pow2(long k) {
  Integer num = 1, den = 1;
  if (k >= 0) {
    num <<= static_cast<unsigned long>(k);
  } else {
    den <<= static_cast<unsigned long>(-k);
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

static Rational dyadic_round(const Rational& x, unsigned bits, bool up) {
  Integer scaled_num = x.get_num() << bits;
  Integer q;
  if (up) {
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den().get_mpz_t());
  } else {
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den().get_mpz_t());
  }
  Rational r(q, Integer(1) << bits);
  r.canonicalize();
  return r;
}

Rational floor_dyadic(const Rational& x, unsigned bits) { return dyadic_round(x, bits, false); }
Rational ceil_dyadic(const Rational& x, unsigned bits) { return dyadic_round(x, bits, true); }

Integer round_half_even(const Rational& x) {
  Integer q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  Integer twice = rem * 2;
  int cmp = ::cmp(twice, x.get_den());
  if (cmp > 0) return q + 1;
  if (cmp < 0) return q;
  return mpz_even_p(q.get_mpz_t()) ? q : q + 1;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty rational literal");

  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos || s.find('.', dot + 1) != std::string::npos) {
        throw ParseError("bad rational literal: " + text);
      }
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") {
        throw ParseError("bad rational literal: " + text);
      }
      Integer num(digits, 10);
      Integer den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) {
      throw ParseError("bad rational literal: " + text);
    }
    if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + text);
  }
}

std::pair<std::string, std::string> to_strings(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return {c.get_num().get_str(), c.get_den().get_str()};
}

std::string to_decimal(const Rational& x, int significant_digits) {
  if (significant_digits < 1) significant_digits = 1;
  if (x == 0) return "0";
  std::string sign = x < 0 ? "-" : "";
  Rational a = abs(x);

  // Decimal exponent e with 10^e <= a < 10^{e+1}.
  long e = 0;
  Rational ten(10);
  if (a >= 1) {
    Rational p(1);
    while (p * ten <= a) { p *= ten; ++e; }
  } else {
    Rational p(1);
    while (p > a) { p /= ten; --e; }
  }

  // Scale so that round(a * 10^{digits-1-e}) has exactly `digits` digits.
  Integer pow10 = 1;
  long shift = significant_digits - 1 - e;
  for (long i = 0; i < (shift >= 0 ? shift : -shift); ++i) pow10 *= 10;
  Rational scaled = shift >= 0 ? Rational(a * Rational(pow10)) : Rational(a / Rational(pow10));
  Integer m = round_half_even(scaled);
  std::string digits = m.get_str();
  if (static_cast<int>(digits.size()) > significant_digits) {
    // Rounding carried over (e.g. 9.99 -> 10.0): drop the extra trailing zero.
    digits.pop_back();
    ++e;
  }

  auto strip_fraction_zeros = [](std::string m) {
    if (m.find('.') == std::string::npos) return m;
    while (!m.empty() && m.back() == '0') m.pop_back();
    if (!m.empty() && m.back() == '.') m.pop_back();
    return m;
  };

  std::ostringstream out;
  if (e >= significant_digits || e < -4) {
    std::string mantissa(1, digits[0]);
    if (digits.size() > 1) mantissa += "." + digits.substr(1);
    out << sign << strip_fraction_zeros(mantissa) << 'e' << (e >= 0 ? "+" : "") << e;
  } else if (e >= 0) {
    std::string body = digits.substr(0, e + 1);
    if (static_cast<int>(digits.size()) > e + 1) body += "." + digits.substr(e + 1);
    out << sign << strip_fraction_zeros(body);
  } else {
    std::string body = "0.";
    for (long i = 1; i < -e; ++i) body += '0';
    body += digits;
    out << sign << strip_fraction_zeros(body);
  }
  return out.str();
}

double to_double(const Rational& x) { return x.get_d(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert non-finite double to rational");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

}  // namespace cantor
