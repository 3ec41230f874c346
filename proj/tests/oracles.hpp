#pragma once

// Independent reference implementations used only by tests. They restate the
// construction as literally as possible (recursive halving of stored
// intervals) so agreement with the closed-form production code is meaningful.

#include <random>
#include <vector>

#include "cantor/construction.hpp"

namespace cantor::testing {

// Applies the halving rule interval by interval: split [a, b] into halves,
// keep the left-aligned (1 - lambda) fraction of each half.
inline std::vector<ClosedInterval> recursive_level_intervals(const LambdaSequence& seq, int n) {
  std::vector<ClosedInterval> current{{Rational(0), Rational(1)}};
  for (int lvl = 1; lvl <= n; ++lvl) {
    const Rational& lambda = seq.lambda(lvl);
    std::vector<ClosedInterval> next;
    next.reserve(current.size() * 2);
    for (const ClosedInterval& c : current) {
      Rational half = c.length() / 2;
      Rational keep = half * (1 - lambda);
      next.push_back({c.left, c.left + keep});
      next.push_back({c.left + half, c.left + half + keep});
    }
    current = std::move(next);
  }
  return current;
}

// Exact window measure by interval clipping, O(2^n) per call.
inline Rational clipped_window_measure(const std::vector<ClosedInterval>& comps,
                                       const Rational& a, const Rational& b) {
  Rational total(0);
  for (const ClosedInterval& c : comps) {
    Rational lo = c.left < a ? a : c.left;
    Rational hi = c.right > b ? b : c.right;
    if (hi > lo) total += hi - lo;
  }
  return total;
}

// Random non-increasing ratio vector with denominators <= max_den.
inline std::vector<Rational> random_ratio_prefix(std::mt19937_64& rng, int depth,
                                                 int max_den = 40,
                                                 const Rational& cap = Rational(1, 2)) {
  std::uniform_int_distribution<int> den_dist(2, max_den);
  std::vector<Rational> out;
  Rational upper = cap;
  for (int i = 0; i < depth; ++i) {
    int den = den_dist(rng);
    // Draw a numerator so that 1/den <= value <= upper.
    Rational value;
    for (int tries = 0;; ++tries) {
      std::uniform_int_distribution<int> num_dist(1, den - 1);
      value = Rational(num_dist(rng), den);
      value.canonicalize();
      if (value <= upper) break;
      if (tries > 64) {
        value = upper;
        break;
      }
    }
    out.push_back(value);
    upper = value;
  }
  return out;
}

// Dyadic draw strictly inside (0, 1).
inline Rational random_unit_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, (1L << 30) - 1);
  Rational v(num(rng), 1L << 30);
  v.canonicalize();
  return v;
}

}  // namespace cantor::testing
