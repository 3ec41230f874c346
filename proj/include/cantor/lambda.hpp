#pragma once

#include <json.hpp>

#include <vector>

#include "cantor/enclosure.hpp"

namespace cantor {

// Ratio sequence driving the construction: at level n each parent component
// is halved and the kept (left-aligned) fraction of each half is 1 - lambda_n.
// Levels 1..depth carry explicit rationals; beyond depth the sequence
// continues implicitly with lambda_j = 1 - exp(-l_j), l_j = tail_base *
// tail_ratio^(j - depth).
//
// tail_base == 0 encodes the truncated sequence (lambda_j = 0 beyond depth),
// which the level-exact oracles use. tail_ratio == 1 with tail_base > 0
// encodes a divergent exponent sum: the limit set then has measure zero and
// tail_product collapses to the exact [0, 0].
//
// Invariants enforced here: every explicit ratio lies strictly inside (0, 1),
// the explicit part is non-increasing, and the first implicit ratio is
// certified not to exceed the last explicit one.
class LambdaSequence {
 public:
  LambdaSequence(std::vector<Rational> prefix, Rational tail_base, Rational tail_ratio,
                 unsigned bits = kDefaultPrecisionBits);
  static LambdaSequence truncated(std::vector<Rational> prefix);

  int depth() const { return static_cast<int>(prefix_.size()); }
  const Rational& lambda(int n) const;  // 1-based, n <= depth
  const std::vector<Rational>& prefix() const { return prefix_; }
  const Rational& tail_base() const { return tail_base_; }
  const Rational& tail_ratio() const { return tail_ratio_; }
  bool has_tail() const { return tail_base_ > 0 && tail_ratio_ > 0; }
  bool divergent_tail() const { return has_tail() && tail_ratio_ == 1; }

  // sum_{j > n} l_j over the implicit tail, for n >= depth. Requires a
  // convergent tail.
  Rational tail_exponent_sum(int n) const;

  // prod_{j > depth} (1 - lambda_j) = exp(-tail_exponent_sum(depth)).
  Enclosure tail_product(unsigned bits) const;

  nlohmann::json to_json() const;
  static LambdaSequence from_json(const nlohmann::json& doc,
                                  unsigned bits = kDefaultPrecisionBits);

 private:
  std::vector<Rational> prefix_;
  Rational tail_base_ = Rational(0);
  Rational tail_ratio_ = Rational(0);
};

}  // namespace cantor
