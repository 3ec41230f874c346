#pragma once

#include <ostream>

#include "cantor/lambda.hpp"

namespace cantor {

// Draws construction levels 0..max_level as horizontal bar rows (one row per
// level, components filled, gaps blank; level 0 is the full unit bar) into an
// 800-unit-wide SVG. Pixel coordinates are rounded half-to-even from the
// exact endpoints, so output is deterministic across platforms.
void write_levels_svg(const LambdaSequence& seq, int max_level, std::ostream& os);

// Exact endpoints of every component of levels 0..max_level, one row per
// component:
//   level,index,left,right,left_dec,right_dec
// with left/right as canonical rationals and 12-digit decimal echoes.
void write_levels_csv(const LambdaSequence& seq, int max_level, std::ostream& os);

}  // namespace cantor
