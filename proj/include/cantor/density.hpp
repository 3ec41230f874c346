#pragma once

#include <cstdint>
#include <vector>

#include "cantor/construction.hpp"

namespace cantor {

// Exact |C_N ∩ [0, x]| for the level-N truncation (N = a.level()).
Rational prefix_measure_level(const CantorApproximation& a, const Rational& x);

// Certified |C ∩ [0, x]| for the limit set. Every fully covered level-N
// component holds between r_N*tau.lo and r_N*tau.hi of limit measure, where
// tau encloses prod_{j>N}(1-lambda_j). The partially covered component with
// covered prefix w keeps at least w - r_N*(1-tau.lo), since later levels
// remove at most r_N*(1-tau) from it in total, and at most min(w, r_N*tau.hi).
Enclosure prefix_measure_bounds(const CantorApproximation& a, const Rational& x);

// phi(s) = |C ∩ [0, s]| / s as a certified enclosure, s in (0, 1].
Enclosure phi(const CantorApproximation& a, const Rational& s);

struct BruteForceResult {
  Rational max_value;               // max over a of |C_N ∩ [a, a+s]|
  std::vector<Rational> witnesses;  // every maximizing breakpoint, ascending
};

// Exact maximization of the window measure a -> |C_N ∩ [a, a+s]|. The
// function is piecewise linear with breakpoints at component endpoints and at
// endpoints shifted by -s, so scanning those (exactly, over a common integer
// denominator) finds the true maximum. On a constant maximal stretch the
// witnesses are the breakpoints bounding it.
BruteForceResult phi_bruteforce(const CantorApproximation& a, const Rational& s);

// Gap bookkeeping for the right endpoint b of a level-N component, relative
// to a coarser level n: b = base + copies*r_N + gap_mass, where
//   base     = left endpoint of the enclosing level-(n-1) block,
//   copies   = number of level-N components of that block up to b,
//   gap_mass = total gap length inside the block before b, split by the
//              address digits theta_i at levels n..N.
struct PrefixDecomposition {
  int level = 0;             // N
  int coarse_level = 0;      // n, 1 <= n <= N
  std::vector<bool> digits;  // theta_i for levels n..N
  Rational base;
  Integer copies;
  Rational gap_mass;
  Rational endpoint;         // b, reconstructed and cross-checked
};

PrefixDecomposition decompose_endpoint(const CantorApproximation& a, std::uint64_t index,
                                       int coarse_level);

// Internal gap measure of one level-m block truncated at level N:
// G_m = r_m - 2^(N-m) r_N; satisfies G_N = 0 and G_m = 2 G_{m+1} + 2 g_{m+1}.
Rational block_gap_mass(const CantorApproximation& a, int m);

}  // namespace cantor
