#pragma once

#include <memory>
#include <string>

#include "cantor/enclosure.hpp"

namespace cantor {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One-variable arithmetic expressions. Two dialects share the parser:
//   bound dialect: variable x, rational literals, + - * /, sqrt, min, max, ()
//   curve dialect: variable t, rational literals, + - * /, integer ^, ()
// The curve dialect is closed under d/dt, which derivative() relies on.
struct ExprDialect {
  std::string variable = "x";
  bool allow_functions = true;  // sqrt, min, max
  bool allow_pow = false;       // ^ with a non-negative integer exponent
};

ExprDialect bound_dialect();
ExprDialect curve_dialect();

class Expr {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Neg, Mul, Div, Sqrt, Min, Max, Pow };

  // Enclosure of { f(u) : u in X }. Sound but not always tight for
  // expressions that repeat the variable.
  Enclosure eval(const Enclosure& x, unsigned bits) const;
  double eval_double(double x) const;

  // d/dt; defined for the curve dialect nodes only (throws DomainError on
  // sqrt/min/max).
  ExprPtr derivative() const;

  Kind kind() const { return kind_; }
  std::string to_string() const;

  static ExprPtr constant(Rational v);
  static ExprPtr variable();
  static ExprPtr unary(Kind k, ExprPtr a);
  static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
  static ExprPtr power(ExprPtr a, long n);

 private:
  Kind kind_ = Kind::Constant;
  Rational value_;
  long exponent_ = 0;
  ExprPtr a_, b_;
};

// Throws ParseError on malformed input.
ExprPtr parse_expression(const std::string& text, const ExprDialect& dialect);

}  // namespace cantor
