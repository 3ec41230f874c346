#include "cantor/render.hpp"

#include <algorithm>

#include "cantor/construction.hpp"
#include "cantor/errors.hpp"

namespace cantor {

namespace {

constexpr int kWidth = 800;
constexpr int kRowHeight = 40;
constexpr int kBarHeight = 28;
constexpr int kBarInset = 6;

void check_levels(const LambdaSequence& seq, int max_level) {
  if (max_level < 0) throw DomainError("negative level");
  if (max_level > kMaxEnumeratedLevel)
    throw ResourceLimit("level enumeration capped at 2^" + std::to_string(kMaxEnumeratedLevel) +
                        " components");
  if (max_level > seq.depth())
    throw IndexOutOfRange("sequence has no explicit level " + std::to_string(max_level));
}

long px(const Rational& x) {
  return static_cast<long>(round_half_even(x * kWidth).get_si());
}

}  // namespace

void write_levels_svg(const LambdaSequence& seq, int max_level, std::ostream& os) {
  check_levels(seq, max_level);
  const int rows = max_level + 1;  // levels 0..max_level
  const int height = kRowHeight * rows;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << kWidth << " " << height << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (int n = 0; n <= max_level; ++n) {
    const int y = kRowHeight * n + kBarInset;
    for (const auto& comp : level_intervals(seq, n)) {
      long x0 = px(comp.left);
      long w = std::max<long>(1, px(comp.right) - x0);
      os << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
         << kBarHeight << "\" fill=\"#1f4e79\"/>\n";
    }
  }
  os << "</svg>\n";
}

void write_levels_csv(const LambdaSequence& seq, int max_level, std::ostream& os) {
  check_levels(seq, max_level);
  os << "level,index,left,right,left_dec,right_dec\n";
  for (int n = 0; n <= max_level; ++n) {
    auto comps = level_intervals(seq, n);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      os << n << ',' << i << ',' << comps[i].left.get_str() << ',' << comps[i].right.get_str()
         << ',' << to_decimal(comps[i].left) << ',' << to_decimal(comps[i].right) << '\n';
    }
  }
}

}  // namespace cantor
