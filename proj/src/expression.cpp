#include "cantor/expression.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/series.hpp"

namespace cantor {

ExprDialect bound_dialect() { return ExprDialect{"x", true, false}; }
ExprDialect curve_dialect() { return ExprDialect{"t", false, true}; }

ExprPtr Expr::constant(Rational v) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Constant;
  e->value_ = std::move(v);
  return e;
}

ExprPtr Expr::variable() {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Variable;
  return e;
}

ExprPtr Expr::unary(Kind k, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind_ = k;
  e->a_ = std::move(a);
  return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind_ = k;
  e->a_ = std::move(a);
  e->b_ = std::move(b);
  return e;
}

ExprPtr Expr::power(ExprPtr a, long n) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::Pow;
  e->a_ = std::move(a);
  e->exponent_ = n;
  return e;
}

Enclosure Expr::eval(const Enclosure& x, unsigned bits) const {
  switch (kind_) {
    case Kind::Constant: return Enclosure(value_);
    case Kind::Variable: return x;
    case Kind::Add: return a_->eval(x, bits) + b_->eval(x, bits);
    case Kind::Sub: return a_->eval(x, bits) - b_->eval(x, bits);
    case Kind::Neg: return -a_->eval(x, bits);
    case Kind::Mul: return a_->eval(x, bits) * b_->eval(x, bits);
    case Kind::Div: return a_->eval(x, bits) / b_->eval(x, bits);
    case Kind::Min: return min(a_->eval(x, bits), b_->eval(x, bits));
    case Kind::Max: return max(a_->eval(x, bits), b_->eval(x, bits));
    case Kind::Sqrt: {
      Enclosure arg = a_->eval(x, bits);
      if (arg.hi < 0) throw DomainError("sqrt of a negative enclosure");
      Rational lo_arg = arg.lo < 0 ? Rational(0) : arg.lo;
      return Enclosure(sqrt_enclosure(lo_arg, bits).lo, sqrt_enclosure(arg.hi, bits).hi);
    }
    case Kind::Pow: {
      if (exponent_ == 0) return Enclosure(Rational(1));
      Enclosure arg = a_->eval(x, bits);
      Enclosure r = arg;
      for (long i = 1; i < exponent_; ++i) r = r * arg;
      return r;
    }
  }
  throw DomainError("unreachable expression kind");
}

double Expr::eval_double(double x) const {
  switch (kind_) {
    case Kind::Constant: return to_double(value_);
    case Kind::Variable: return x;
    case Kind::Add: return a_->eval_double(x) + b_->eval_double(x);
    case Kind::Sub: return a_->eval_double(x) - b_->eval_double(x);
    case Kind::Neg: return -a_->eval_double(x);
    case Kind::Mul: return a_->eval_double(x) * b_->eval_double(x);
    case Kind::Div: return a_->eval_double(x) / b_->eval_double(x);
    case Kind::Min: return std::min(a_->eval_double(x), b_->eval_double(x));
    case Kind::Max: return std::max(a_->eval_double(x), b_->eval_double(x));
    case Kind::Sqrt: return std::sqrt(a_->eval_double(x));
    case Kind::Pow: return std::pow(a_->eval_double(x), static_cast<double>(exponent_));
  }
  return 0.0;
}

ExprPtr Expr::derivative() const {
  switch (kind_) {
    case Kind::Constant: return constant(Rational(0));
    case Kind::Variable: return constant(Rational(1));
    case Kind::Add: return binary(Kind::Add, a_->derivative(), b_->derivative());
    case Kind::Sub: return binary(Kind::Sub, a_->derivative(), b_->derivative());
    case Kind::Neg: return unary(Kind::Neg, a_->derivative());
    case Kind::Mul:
      return binary(Kind::Add, binary(Kind::Mul, a_->derivative(), b_),
                    binary(Kind::Mul, a_, b_->derivative()));
    case Kind::Div:
      // (u/v)' = (u'v - uv') / v^2
      return binary(Kind::Div,
                    binary(Kind::Sub, binary(Kind::Mul, a_->derivative(), b_),
                           binary(Kind::Mul, a_, b_->derivative())),
                    binary(Kind::Mul, b_, b_));
    case Kind::Pow: {
      if (exponent_ == 0) return constant(Rational(0));
      ExprPtr inner = a_->derivative();
      ExprPtr reduced = exponent_ == 1 ? constant(Rational(1)) : power(a_, exponent_ - 1);
      return binary(Kind::Mul, binary(Kind::Mul, constant(Rational(exponent_)), reduced), inner);
    }
    case Kind::Sqrt:
    case Kind::Min:
    case Kind::Max:
      throw DomainError("derivative is defined for the curve dialect only");
  }
  throw DomainError("unreachable expression kind");
}

std::string Expr::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: {
      auto [n, d] = to_strings(value_);
      if (d == "1") os << n; else os << n << "/" << d;
      break;
    }
    case Kind::Variable: os << "t"; break;  // placeholder name, dialect-agnostic
    case Kind::Add: os << "(" << a_->to_string() << " + " << b_->to_string() << ")"; break;
    case Kind::Sub: os << "(" << a_->to_string() << " - " << b_->to_string() << ")"; break;
    case Kind::Neg: os << "(-" << a_->to_string() << ")"; break;
    case Kind::Mul: os << "(" << a_->to_string() << " * " << b_->to_string() << ")"; break;
    case Kind::Div: os << "(" << a_->to_string() << " / " << b_->to_string() << ")"; break;
    case Kind::Sqrt: os << "sqrt(" << a_->to_string() << ")"; break;
    case Kind::Min: os << "min(" << a_->to_string() << ", " << b_->to_string() << ")"; break;
    case Kind::Max: os << "max(" << a_->to_string() << ", " << b_->to_string() << ")"; break;
    case Kind::Pow: os << "(" << a_->to_string() << ")^" << exponent_; break;
  }
  return os.str();
}

namespace {

struct Parser {
  const std::string& text;
  const ExprDialect& dialect;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      if (eat('+')) e = Expr::binary(Expr::Kind::Add, e, term());
      else if (eat('-')) e = Expr::binary(Expr::Kind::Sub, e, term());
      else return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (true) {
      if (eat('*')) e = Expr::binary(Expr::Kind::Mul, e, unary());
      else if (eat('/')) e = Expr::binary(Expr::Kind::Div, e, unary());
      else return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return Expr::unary(Expr::Kind::Neg, unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (peek() == '^') {
      if (!dialect.allow_pow) fail("'^' is not allowed in this dialect");
      eat('^');
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) fail("expected a non-negative integer exponent");
      long n = std::stol(text.substr(start, pos - start));
      return Expr::power(base, n);
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
        ++pos;
      }
      return Expr::constant(parse_rational(text.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
      }
      std::string name = text.substr(start, pos - start);
      if (name == dialect.variable) return Expr::variable();
      if (dialect.allow_functions && name == "sqrt") {
        if (!eat('(')) fail("expected '(' after sqrt");
        ExprPtr a = expr();
        if (!eat(')')) fail("expected ')'");
        return Expr::unary(Expr::Kind::Sqrt, a);
      }
      if (dialect.allow_functions && (name == "min" || name == "max")) {
        if (!eat('(')) fail("expected '(' after " + name);
        ExprPtr a = expr();
        if (!eat(',')) fail("expected ','");
        ExprPtr b = expr();
        if (!eat(')')) fail("expected ')'");
        return Expr::binary(name == "min" ? Expr::Kind::Min : Expr::Kind::Max, a, b);
      }
      fail("unknown identifier '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ExprPtr parse_expression(const std::string& text, const ExprDialect& dialect) {
  Parser p{text, dialect};
  return p.parse();
}

}  // namespace cantor
