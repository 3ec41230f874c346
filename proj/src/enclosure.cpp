#include "cantor/enclosure.hpp"

#include <algorithm>
#include <ostream>

#include "cantor/errors.hpp"

namespace cantor {

Enclosure::Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw DomainError("enclosure endpoints out of order");
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo + b.lo, a.hi + b.hi);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo - b.hi, a.hi - b.lo);
}

Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi, -a.lo); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.lo <= 0 && 0 <= b.hi) throw DomainError("division by an interval containing zero");
  return a * Enclosure(1 / b.hi, 1 / b.lo);
}

Enclosure operator+(const Enclosure& a, const Rational& b) {
  return Enclosure(a.lo + b, a.hi + b);
}

Enclosure operator-(const Rational& a, const Enclosure& b) {
  return Enclosure(a - b.hi, a - b.lo);
}

Enclosure operator*(const Enclosure& a, const Rational& b) {
  if (b >= 0) return Enclosure(a.lo * b, a.hi * b);
  return Enclosure(a.hi * b, a.lo * b);
}

Enclosure operator/(const Enclosure& a, const Rational& b) {
  if (b == 0) throw DomainError("division by zero");
  return a * Rational(1 / b);
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
  Rational lo = std::max(a.lo, b.lo);
  Rational hi = std::min(a.hi, b.hi);
  if (lo > hi) throw DomainError("intersection of disjoint enclosures");
  return Enclosure(std::move(lo), std::move(hi));
}

bool definitely_less(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo; }
bool definitely_leq(const Enclosure& a, const Enclosure& b) { return a.hi <= b.lo; }
bool overlaps(const Enclosure& a, const Enclosure& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

Enclosure outward_dyadic(const Enclosure& e, unsigned bits) {
  return Enclosure(floor_dyadic(e.lo, bits), ceil_dyadic(e.hi, bits));
}

std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
  return os << "[" << to_decimal(e.lo) << ", " << to_decimal(e.hi) << "]";
}

}  // namespace cantor
