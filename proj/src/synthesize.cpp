#include "cantor/synthesize.hpp"

#include <algorithm>

#include "cantor/errors.hpp"
#include "cantor/json_util.hpp"
#include "cantor/series.hpp"

namespace cantor {

namespace {

// Gap below 1 the deep-scale samples may leave while still counting as
// "approaches 1 at zero".
const Rational kLimitGap(1, 64);

Enclosure neg_log(const Enclosure& f_value, unsigned bits) {
  // -log over [lo, hi]: monotone, so map the endpoints.
  Enclosure at_hi = log_enclosure(f_value.hi, bits);
  Enclosure at_lo = log_enclosure(f_value.lo, bits);
  Rational lo = -at_hi.hi;
  Rational hi = -at_lo.lo;
  if (lo < 0) lo = 0;  // f <= 1 means the true value is non-negative
  if (hi < lo) hi = lo;
  return Enclosure(lo, hi);
}

// Certified e^-x < bound, escalating the series precision when the enclosure
// is too coarse to decide.
bool exp_definitely_below(const Rational& x, const Rational& bound, unsigned bits) {
  for (unsigned b = bits;; b *= 2) {
    Enclosure e = exp_neg_enclosure(x, b);
    if (e.hi < bound) return true;
    if (e.lo >= bound) return false;
    if (b >= kMaxPrecisionBits) return false;
  }
}

}  // namespace

SynthesisResult synthesize_lambda(const TargetFunction& f, const SynthesisOptions& opt) {
  if (opt.depth < 2 || opt.depth > 40) {
    throw DomainError("synthesis depth must lie in 2..40");
  }
  if (opt.headroom <= 0 || opt.headroom > 1) {
    throw DomainError("headroom must lie in (0, 1]");
  }
  if (opt.horizon_multiple < 1) throw DomainError("horizon multiple must be >= 1");
  const unsigned bits = std::clamp(opt.precision_bits, kMinPrecisionBits, kMaxPrecisionBits);
  const int depth = opt.depth;
  const int horizon = opt.horizon_multiple * depth;
  const Rational& c = opt.headroom;

  // f and L = -log f at the dyadic scales 2^(1-n).
  std::vector<Enclosure> f_enc(static_cast<std::size_t>(horizon) + 1);
  std::vector<Enclosure> neg_log_f(static_cast<std::size_t>(horizon) + 1);
  for (int n = 1; n <= horizon; ++n) {
    Enclosure v;
    try {
      v = f.eval(pow2(1 - n), bits);
    } catch (const DomainError& e) {
      throw InvalidTarget(std::string("target not evaluable at scale 2^") +
                          std::to_string(1 - n) + ": " + e.what());
    }
    if (v.lo <= 0) {
      throw InvalidTarget("target not certifiably positive at scale 2^" +
                          std::to_string(1 - n));
    }
    f_enc[static_cast<std::size_t>(n)] = v;
    neg_log_f[static_cast<std::size_t>(n)] = neg_log(v, bits);
  }

  // Certify f -> 1 at 0: over the deepest quarter of the horizon the lower
  // bounds must come within kLimitGap of 1.
  Rational deepest_lo(0);
  for (int n = horizon - horizon / 4 + 1; n <= horizon; ++n) {
    deepest_lo = std::max(deepest_lo, f_enc[static_cast<std::size_t>(n)].lo);
  }
  if (1 - deepest_lo > kLimitGap) {
    throw InvalidTarget("cannot certify that the target approaches 1 at zero: "
                        "max lower bound near the horizon is " + to_decimal(deepest_lo));
  }

  // Exponent schedule: aim at tail sums T_n = L_n + c*2^-n, i.e.
  // ell_n = L_{n-1} - L_n + c*2^-n, floored for positivity, then made
  // non-increasing by a suffix maximum and rounded up onto the dyadic grid.
  std::vector<Rational> ell(static_cast<std::size_t>(depth) + 1);
  for (int n = 2; n <= depth; ++n) {
    Rational raw = neg_log_f[static_cast<std::size_t>(n - 1)].hi -
                   neg_log_f[static_cast<std::size_t>(n)].hi + c * pow2(-n);
    Rational floor_v = c * pow2(-n);
    ell[static_cast<std::size_t>(n)] = std::max(raw, floor_v);
  }
  for (int n = depth - 1; n >= 2; --n) {
    ell[static_cast<std::size_t>(n)] =
        std::max(ell[static_cast<std::size_t>(n)], ell[static_cast<std::size_t>(n + 1)]);
  }
  for (int n = 2; n <= depth; ++n) {
    ell[static_cast<std::size_t>(n)] = ceil_dyadic(ell[static_cast<std::size_t>(n)], bits);
  }
  ell[1] = ceil_dyadic(ell[2] + c, bits);
  for (int n = 2; n <= depth; ++n) {
    if (ell[static_cast<std::size_t>(n)] > ell[static_cast<std::size_t>(n - 1)]) {
      throw SynthesisUnverified("exponent schedule lost monotonicity after rounding");
    }
  }

  // Ratios: lambda_n = 1 - exp(-ell_n), rounded down on the survival side so
  // the realized product never exceeds e^(-sum ell).
  std::vector<Rational> lambda(static_cast<std::size_t>(depth) + 1);
  for (int n = 1; n <= depth; ++n) {
    Enclosure survive = exp_neg_enclosure(ell[static_cast<std::size_t>(n)], bits + 8);
    Rational kept = floor_dyadic(survive.lo, bits);
    if (kept <= 0) {
      throw SynthesisUnverified("target forces removing everything at level " +
                                std::to_string(n) + " at this precision");
    }
    lambda[static_cast<std::size_t>(n)] = 1 - kept;
  }

  // Tail ratio: decay of L over the last explicit levels, inflated toward 1
  // so a finite-depth estimate cannot undershoot the asymptotic rate, and
  // clamped into [1/2, 15/16].
  Rational sup_ratio(0);
  bool have_ratio = false;
  for (int n = std::max(2, depth - depth / 2); n < depth; ++n) {
    const Rational& ln = neg_log_f[static_cast<std::size_t>(n)].hi;
    const Rational& lnext = neg_log_f[static_cast<std::size_t>(n + 1)].hi;
    if (ln > 0 && lnext > 0) {
      Rational ratio = lnext / ln;
      if (!have_ratio || ratio > sup_ratio) sup_ratio = ratio;
      have_ratio = true;
    }
  }
  Rational q(1, 2);
  if (have_ratio) {
    if (sup_ratio >= 1) {
      q = Rational(15, 16);
    } else {
      q = sup_ratio + (1 - sup_ratio) / 8;
      q = std::clamp(q, Rational(1, 2), Rational(15, 16));
    }
  }
  q = ceil_dyadic(q, bits);
  if (q > Rational(15, 16)) q = Rational(15, 16);
  Rational tail_base = ell[static_cast<std::size_t>(depth)];

  LambdaSequence seq = [&]() {
    try {
      return LambdaSequence(std::vector<Rational>(lambda.begin() + 1, lambda.end()), tail_base,
                            q, bits);
    } catch (const DomainError& e) {
      throw SynthesisUnverified(std::string("built sequence failed validation: ") + e.what());
    }
  }();

  // Post-check 1: certified domination at the explicit levels. The realized
  // survival product prod_{j>n}(1-lambda_j) [exact] times the implicit tail
  // product [certified upper bound] must stay below f's lower bound.
  Enclosure tail_product = seq.tail_product(bits);
  SynthesisResult result{seq, {}, Enclosure(Rational(0)), Rational(0), horizon};
  Rational explicit_product(1);
  std::vector<Rational> suffix_products(static_cast<std::size_t>(depth) + 1);
  suffix_products[static_cast<std::size_t>(depth)] = Rational(1);
  for (int n = depth - 1; n >= 0; --n) {
    suffix_products[static_cast<std::size_t>(n)] =
        suffix_products[static_cast<std::size_t>(n + 1)] *
        (1 - lambda[static_cast<std::size_t>(n + 1)]);
  }

  bool first_row = true;
  for (int n = 1; n <= depth; ++n) {
    SynthesisRow row;
    row.n = n;
    row.neg_log_f = neg_log_f[static_cast<std::size_t>(n)];
    row.ell = ell[static_cast<std::size_t>(n)];
    row.lambda = lambda[static_cast<std::size_t>(n)];
    row.product_hi = suffix_products[static_cast<std::size_t>(n)] * tail_product.hi;
    row.f_lo = f_enc[static_cast<std::size_t>(n)].lo;
    row.margin = row.f_lo - row.product_hi;
    if (row.margin <= 0) {
      throw SynthesisUnverified("domination margin vanished at level " + std::to_string(n) +
                                ": product " + to_decimal(row.product_hi) + " vs target " +
                                to_decimal(row.f_lo));
    }
    if (first_row || row.margin < result.min_margin) {
      result.min_margin = row.margin;
      first_row = false;
    }
    result.rows.push_back(std::move(row));
  }

  // Post-check 2: tail domination beyond depth, out to the horizon:
  // exp(-sum_{j>n} ell_j) < f(2^(1-n)) with the geometric tail sums.
  for (int n = depth + 1; n <= horizon; ++n) {
    Rational tail_sum = seq.tail_exponent_sum(n);
    if (!exp_definitely_below(tail_sum, f_enc[static_cast<std::size_t>(n)].lo, bits)) {
      throw SynthesisUnverified("tail domination could not be certified at level " +
                                std::to_string(n) + " of the horizon check");
    }
  }

  // Post-check 3: positive measure.
  result.measure = tail_product * suffix_products[0];
  if (result.measure.lo <= 0) {
    throw SynthesisUnverified("cannot certify positive measure for the built sequence");
  }
  return result;
}

nlohmann::json SynthesisResult::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({{"n", row.n},
                         {"neg_log_f", enc_to_json(row.neg_log_f)},
                         {"ell", rat_to_json(row.ell)},
                         {"ell_dec", to_decimal(row.ell)},
                         {"lambda", rat_to_json(row.lambda)},
                         {"lambda_dec", to_decimal(row.lambda)},
                         {"product_hi_dec", to_decimal(row.product_hi)},
                         {"f_lo_dec", to_decimal(row.f_lo)},
                         {"margin_dec", to_decimal(row.margin)}});
  }
  return {{"sequence", sequence.to_json()},
          {"rows", std::move(rows_json)},
          {"measure", enc_to_json(measure)},
          {"min_margin", rat_to_json(min_margin)},
          {"min_margin_dec", to_decimal(min_margin)},
          {"horizon", horizon}};
}

}  // namespace cantor
