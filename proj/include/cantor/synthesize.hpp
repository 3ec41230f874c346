#pragma once

#include <json.hpp>

#include <vector>

#include "cantor/lambda.hpp"
#include "cantor/target.hpp"

namespace cantor {

struct SynthesisOptions {
  int depth = 14;
  // Additive exponent margin c: tail exponent sums are scheduled as
  // L_n + c*2^-n, so the certified slack decays but never vanishes.
  Rational headroom = Rational(1, 16);
  unsigned precision_bits = kDefaultPrecisionBits;
  // Tail domination is re-checked out to horizon_multiple * depth.
  int horizon_multiple = 4;
};

struct SynthesisRow {
  int n = 0;
  Enclosure neg_log_f;      // L_n = -log f(2^(1-n))
  Rational ell;         // exponent used at level n (dyadic)
  Rational lambda;      // 1 - exp(-ell), rounded to the dyadic grid
  Rational product_hi;  // certified upper bound of prod_{j>n}(1-lambda_j)
  Rational f_lo;        // certified lower bound of f(2^(1-n))
  Rational margin;      // f_lo - product_hi, positive by construction
};

struct SynthesisResult {
  LambdaSequence sequence;
  std::vector<SynthesisRow> rows;  // n = 1..depth
  Enclosure measure;
  Rational min_margin;
  int horizon = 0;  // deepest level whose domination was certified
  nlohmann::json to_json() const;
};

// Builds a ratio sequence whose limit set has positive measure and whose
// maximal density stays strictly below f at every dyadic scale:
// prod_{j>n}(1-lambda_j) < f(2^(1-n)) certified for n = 1..depth, and the
// geometric exponent tail re-checked out to the horizon. The exponent
// schedule aims at tail sums T_n = L_n + c*2^-n, made monotone by a suffix
// maximum and rounded up onto the dyadic grid; the tail ratio is read off the
// decay of L over the last explicit levels and inflated toward 1 so that
// finite-depth ratio estimates cannot undershoot the asymptotic decay.
//
// Throws InvalidTarget when f is nonpositive at a checked scale or cannot be
// certified to approach 1 at zero; throws SynthesisUnverified when a
// post-check on the built sequence fails.
SynthesisResult synthesize_lambda(const TargetFunction& f, const SynthesisOptions& opt = {});

}  // namespace cantor
