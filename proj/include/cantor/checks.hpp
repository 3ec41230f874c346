#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cantor/density.hpp"
#include "cantor/target.hpp"

namespace cantor {

enum class TriState { Pass, Indeterminate, Fail };
const char* to_string(TriState s);

// ---------------------------------------------------------------------------
// Prefix maximality: among all windows of length s, the prefix window [0, s]
// carries maximal level-N measure. Checked exactly per sample against the
// breakpoint maximizer.
struct WindowMaximalitySample {
  Rational s;
  Rational brute_max;
  Rational prefix_value;
  bool exact_equal = false;
  std::size_t witness_count = 0;
};

struct WindowMaximalityReport {
  bool passed = false;
  std::vector<WindowMaximalitySample> samples;
  nlohmann::json to_json() const;
};

WindowMaximalityReport check_prefix_maximality(const CantorApproximation& a,
                                               const std::vector<Rational>& window_lengths);

// ---------------------------------------------------------------------------
// Band domination: for s in the band [r_n, r_{n-1}) the density never exceeds
// its value at the band's left end, phi(s) <= phi(r_n). The exact comparison
// uses the level-N truncation; the enclosure comparison addresses the limit
// set and may come back indeterminate when the two enclosures overlap.
struct BandSample {
  int band = 0;  // n
  Rational s;
  Rational level_phi_s;    // prefix_measure_level(s)/s
  Rational level_phi_rn;   // prefix_measure_level(r_n)/r_n
  bool exact_pass = false;
  TriState limit_state = TriState::Indeterminate;
};

struct BandDominationReport {
  bool exact_passed = false;
  bool any_limit_fail = false;
  std::vector<BandSample> samples;
  nlohmann::json to_json() const;
};

BandDominationReport check_band_domination(const CantorApproximation& a, int samples_per_band,
                                           std::uint64_t seed);

// ---------------------------------------------------------------------------
// Target domination certificate: phi(s) < f(s) across scales, plus positive
// measure. Structural rows compare phi(r_n) with f evaluated at 2^(1-n) (the
// scale that controls the whole band); sampled rows compare phi(s) with f(s)
// at random in-band points. Comparisons escalate in precision (and, when the
// sequence allows, approximation level) until decisive or capped.
struct CertificatePoint {
  bool structural = false;
  int band = 0;      // n for structural rows, enclosing band for samples
  Rational s;        // where phi was bounded
  Rational f_at;     // argument passed to f
  Enclosure phi_value;
  Enclosure f_value;
  Rational margin;   // f.lo - phi.hi; positive = certified
  TriState state = TriState::Indeterminate;
};

struct TargetCertificate {
  bool holds = false;
  TriState state = TriState::Indeterminate;
  Enclosure measure;
  bool measure_positive = false;
  Rational min_margin;
  std::vector<CertificatePoint> points;
  unsigned final_precision_bits = 0;
  int final_level = 0;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  int sample_count = 128;
  std::uint64_t seed = 1;
  unsigned precision_bits = kDefaultPrecisionBits;
  unsigned max_precision_bits = kMaxPrecisionBits;
  bool allow_level_deepening = true;
};

TargetCertificate verify_target(const CantorApproximation& a, const TargetFunction& f,
                                const VerifyOptions& opt = {});

// Throws CertificateFailed / IndeterminateCertificate unless the certificate
// holds. Convenience for pipelines that want the exception flow.
void require_certificate(const TargetCertificate& cert);

// Certificate rows as CSV, sorted by scale: one line per point with exact
// rationals and decimal echoes.
void write_profile_csv(const TargetCertificate& cert, std::ostream& os);

}  // namespace cantor
