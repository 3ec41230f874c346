#pragma once

#include <iosfwd>

#include "cantor/rational.hpp"

namespace cantor {

// Closed interval [lo, hi] of exact rationals. Arithmetic is outward exact:
// the result contains every value attainable from points of the operands, so
// any comparison that succeeds on enclosures holds for the true values.
struct Enclosure {
  Rational lo, hi;

  Enclosure() : lo(0), hi(0) {}
  explicit Enclosure(const Rational& v) : lo(v), hi(v) {}
  Enclosure(Rational l, Rational h);

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool is_point() const { return lo == hi; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
// Throws DomainError if b contains zero.
Enclosure operator/(const Enclosure& a, const Enclosure& b);

Enclosure operator+(const Enclosure& a, const Rational& b);
Enclosure operator-(const Rational& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Rational& b);
Enclosure operator/(const Enclosure& a, const Rational& b);

Enclosure min(const Enclosure& a, const Enclosure& b);
Enclosure max(const Enclosure& a, const Enclosure& b);
Enclosure hull(const Enclosure& a, const Enclosure& b);
// Throws DomainError if the operands are disjoint.
Enclosure intersect(const Enclosure& a, const Enclosure& b);

// "definitely" means: for every pair of points from the two intervals.
bool definitely_less(const Enclosure& a, const Enclosure& b);
bool definitely_leq(const Enclosure& a, const Enclosure& b);
bool overlaps(const Enclosure& a, const Enclosure& b);

// Rounds endpoints outward onto the 2^-bits grid. Soundness preserving.
Enclosure outward_dyadic(const Enclosure& e, unsigned bits);

std::ostream& operator<<(std::ostream& os, const Enclosure& e);

}  // namespace cantor
