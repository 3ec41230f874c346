#pragma once

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

#include "cantor/expression.hpp"

namespace cantor {

struct TablePoint {
  Rational x;       // abscissa in (0, 1]
  Enclosure value;  // certified sample, clamped into [0, 1]
};

// A candidate density bound f : (0,1] -> [0,1]. eval returns a certified
// enclosure of f(x); eval_range returns an enclosure of { f(u) : u in [a,b] }.
// All results are clamped into [0,1], since the quantity being dominated is a
// density.
//
// Semantics by kind:
//   Expression: interval evaluation of the parsed formula.
//   Tabulated: the right-continuous step function taking, at x, the value of
//     the smallest table abscissa >= x; constant beyond the last abscissa.
//     For a truly non-increasing f this lies below f, so domination
//     certificates against the steps transfer to f. The quadratic-tail
//     variant replaces the flat continuation below the first abscissa x1 by
//     max(v1, 1 - coeff * x^2), which keeps the deep-scale behaviour f -> 1
//     that sampled tables cannot express.
//   Envelope: see decreasing_envelope below.
class TargetFunction {
 public:
  enum class Kind { Expression, Tabulated, Envelope };

  static TargetFunction expression(const std::string& text);
  static TargetFunction tabulated(std::vector<TablePoint> points, bool non_increasing);
  static TargetFunction tabulated_with_quadratic_tail(std::vector<TablePoint> points,
                                                      const Rational& coeff);

  Enclosure eval(const Rational& x, unsigned bits) const;
  Enclosure eval_range(const Rational& a, const Rational& b, unsigned bits) const;

  Kind kind() const { return kind_; }
  bool non_increasing() const { return non_increasing_; }
  const std::string& describe() const { return source_; }

  nlohmann::json to_json() const;
  static TargetFunction from_json(const nlohmann::json& doc);

  friend TargetFunction decreasing_envelope(const TargetFunction& g, std::vector<Rational> grid);

 private:
  TargetFunction() = default;

  Kind kind_ = Kind::Expression;
  std::string source_;
  ExprPtr expr_;
  std::vector<TablePoint> points_;
  Rational quad_coeff_ = Rational(-1);  // negative: no quadratic tail
  bool non_increasing_ = false;
  std::shared_ptr<const TargetFunction> base_;  // Envelope only
  std::vector<Rational> grid_;                  // Envelope only
};

// h(s) = inf_{0 < u <= s} g(u), certified through the grid: the upper bound
// comes from sampled values at grid points <= s (and at s itself), the lower
// bound from range evaluation over the grid segments covering (0, s]. The
// result is non-increasing by construction, which makes any target usable for
// synthesis even when g rebounds. Grid points must be strictly increasing and
// lie in (0, 1].
TargetFunction decreasing_envelope(const TargetFunction& g, std::vector<Rational> grid);

}  // namespace cantor
