#pragma once

#include <cstdint>
#include <vector>

#include "cantor/lambda.hpp"

namespace cantor {

struct ClosedInterval {
  Rational left, right;
  Rational length() const { return right - left; }
};

// Closed-form level data:
//   r_0 = 1,  r_n = 2^-n * prod_{i<=n} (1 - lambda_i)   (component length)
//   g_n = (1/2) * r_{n-1} * lambda_n                     (gap opened at level n)
//   level_measure = 2^n * r_n                            (total kept length)
// They satisfy r_{n-1} = 2 r_n + 2 g_n.
struct LevelQuantities {
  Rational r, g, level_measure;
};
LevelQuantities level_quantities(const LambdaSequence& seq, int n);  // 1 <= n <= depth

// r_0..r_upto resp. g_1..g_upto (gaps[0] corresponds to level 1).
std::vector<Rational> component_lengths(const LambdaSequence& seq, int upto);
std::vector<Rational> gap_lengths(const LambdaSequence& seq, int upto);

// Binary address of a level-n component. Bit i (1-based, most significant
// first) says whether the right half was taken at level i; the left endpoint
// is the sum of r_{i-1}/2 over the set bits.
struct IntervalAddress {
  int level = 0;
  std::vector<bool> bits;  // bits[i-1] for level i

  static IntervalAddress from_index(std::uint64_t index, int level);
  std::uint64_t index() const;
  // Needs r_0..r_{level-1}.
  Rational left_endpoint(const std::vector<Rational>& r) const;
};

// The 2^n sorted components of the n-th construction step. n <= depth.
std::vector<ClosedInterval> level_intervals(const LambdaSequence& seq, int n);

// Work bound for the exact enumerative routines: 2^level components.
inline constexpr int kMaxEnumeratedLevel = 20;

// Level-N geometry with cached endpoints and the certified tail factor
// prod_{j > N} (1 - lambda_j) relating level-N lengths to limit-set measure.
class CantorApproximation {
 public:
  CantorApproximation(LambdaSequence seq, int level, unsigned bits = kDefaultPrecisionBits);

  const LambdaSequence& sequence() const { return seq_; }
  int level() const { return level_; }
  unsigned precision_bits() const { return bits_; }
  const std::vector<ClosedInterval>& components() const { return components_; }
  const std::vector<Rational>& r() const { return r_; }
  const std::vector<Rational>& g() const { return g_; }
  const Rational& component_length() const { return r_[static_cast<std::size_t>(level_)]; }
  // prod_{j > level} (1 - lambda_j), combining the exact explicit part with
  // the certified implicit tail.
  const Enclosure& tail_factor() const { return tail_factor_; }
  // |C| enclosure: 2^level * r_level * tail_factor.
  Enclosure measure_bounds() const;

 private:
  LambdaSequence seq_;
  int level_;
  unsigned bits_;
  std::vector<Rational> r_, g_;
  std::vector<ClosedInterval> components_;
  Enclosure tail_factor_;
};

}  // namespace cantor
