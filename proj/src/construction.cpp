#include "cantor/construction.hpp"

#include "cantor/errors.hpp"

namespace cantor {

std::vector<Rational> component_lengths(const LambdaSequence& seq, int upto) {
  if (upto < 0 || upto > seq.depth()) {
    throw IndexOutOfRange("component length level outside 0..depth");
  }
  std::vector<Rational> r;
  r.reserve(static_cast<std::size_t>(upto) + 1);
  r.emplace_back(1);
  for (int n = 1; n <= upto; ++n) {
    r.push_back(r.back() * (1 - seq.lambda(n)) / 2);
  }
  return r;
}

std::vector<Rational> gap_lengths(const LambdaSequence& seq, int upto) {
  std::vector<Rational> r = component_lengths(seq, upto);
  std::vector<Rational> g;
  g.reserve(static_cast<std::size_t>(upto));
  for (int n = 1; n <= upto; ++n) {
    g.push_back(r[static_cast<std::size_t>(n - 1)] * seq.lambda(n) / 2);
  }
  return g;
}

LevelQuantities level_quantities(const LambdaSequence& seq, int n) {
  if (n < 1 || n > seq.depth()) throw IndexOutOfRange("level outside 1..depth");
  std::vector<Rational> r = component_lengths(seq, n);
  LevelQuantities q;
  q.r = r.back();
  q.g = r[static_cast<std::size_t>(n - 1)] * seq.lambda(n) / 2;
  q.level_measure = q.r * pow2(n);
  return q;
}

IntervalAddress IntervalAddress::from_index(std::uint64_t index, int level) {
  if (level < 0 || level >= 64) throw IndexOutOfRange("address level outside 0..63");
  if (level < 64 && index >= (std::uint64_t{1} << level)) {
    throw IndexOutOfRange("component index outside 0..2^level-1");
  }
  IntervalAddress a;
  a.level = level;
  a.bits.resize(static_cast<std::size_t>(level));
  for (int i = 0; i < level; ++i) {
    a.bits[static_cast<std::size_t>(i)] = (index >> (level - 1 - i)) & 1;
  }
  return a;
}

std::uint64_t IntervalAddress::index() const {
  std::uint64_t idx = 0;
  for (bool b : bits) idx = (idx << 1) | (b ? 1 : 0);
  return idx;
}

Rational IntervalAddress::left_endpoint(const std::vector<Rational>& r) const {
  if (static_cast<int>(r.size()) < level) {
    throw IndexOutOfRange("need component lengths r_0..r_{level-1}");
  }
  Rational left(0);
  for (int i = 1; i <= level; ++i) {
    if (bits[static_cast<std::size_t>(i - 1)]) {
      left += r[static_cast<std::size_t>(i - 1)] / 2;
    }
  }
  return left;
}

std::vector<ClosedInterval> level_intervals(const LambdaSequence& seq, int n) {
  if (n < 0 || n > seq.depth()) throw IndexOutOfRange("level outside 0..depth");
  if (n > kMaxEnumeratedLevel) {
    throw ResourceLimit("level " + std::to_string(n) + " exceeds the enumeration cap " +
                        std::to_string(kMaxEnumeratedLevel));
  }
  std::vector<Rational> r = component_lengths(seq, n);
  std::vector<Rational> half(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) half[static_cast<std::size_t>(i - 1)] = r[static_cast<std::size_t>(i - 1)] / 2;

  std::size_t count = std::size_t{1} << n;
  std::vector<Rational> lefts(count);
  lefts[0] = Rational(0);
  // left(i) = left(i with lowest set bit cleared) + half at that bit's level.
  for (std::size_t i = 1; i < count; ++i) {
    std::size_t low = i & (i - 1);
    int bit_pos = __builtin_ctzll(i);          // 0-based from the least significant end
    int lvl = n - bit_pos;                     // level owning that address bit
    lefts[i] = lefts[low] + half[static_cast<std::size_t>(lvl - 1)];
  }
  std::vector<ClosedInterval> out(count);
  const Rational& len = r[static_cast<std::size_t>(n)];
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = ClosedInterval{lefts[i], lefts[i] + len};
  }
  return out;
}

CantorApproximation::CantorApproximation(LambdaSequence seq, int level, unsigned bits)
    : seq_(std::move(seq)), level_(level), bits_(bits) {
  if (level < 1 || level > seq_.depth()) {
    throw IndexOutOfRange("approximation level outside 1..depth");
  }
  r_ = component_lengths(seq_, level);
  g_ = gap_lengths(seq_, level);
  components_ = level_intervals(seq_, level);

  Rational explicit_part(1);
  for (int j = level + 1; j <= seq_.depth(); ++j) explicit_part *= 1 - seq_.lambda(j);
  Enclosure tail = seq_.tail_product(bits);
  tail_factor_ = Enclosure(tail.lo * explicit_part, tail.hi * explicit_part);
}

Enclosure CantorApproximation::measure_bounds() const {
  Rational level_measure = component_length() * pow2(level_);
  return tail_factor_ * level_measure;
}

}  // namespace cantor
