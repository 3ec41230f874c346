#include "cantor/checks.hpp"

#include <algorithm>
#include <ostream>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/json_util.hpp"

namespace cantor {

const char* to_string(TriState s) {
  switch (s) {
    case TriState::Pass: return "pass";
    case TriState::Indeterminate: return "indeterminate";
    case TriState::Fail: return "fail";
  }
  return "?";
}

WindowMaximalityReport check_prefix_maximality(const CantorApproximation& a,
                                               const std::vector<Rational>& window_lengths) {
  WindowMaximalityReport report;
  report.passed = true;
  for (const Rational& s : window_lengths) {
    BruteForceResult brute = phi_bruteforce(a, s);
    WindowMaximalitySample sample;
    sample.s = s;
    sample.brute_max = brute.max_value;
    sample.prefix_value = prefix_measure_level(a, s);
    sample.exact_equal =
        brute.max_value == sample.prefix_value && !brute.witnesses.empty() &&
        brute.witnesses.front() == 0;
    sample.witness_count = brute.witnesses.size();
    if (!sample.exact_equal) report.passed = false;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

nlohmann::json WindowMaximalityReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : samples) {
    rows.push_back({{"s", rat_to_json(s.s)},
                    {"s_dec", to_decimal(s.s)},
                    {"brute_max", rat_to_json(s.brute_max)},
                    {"prefix_value", rat_to_json(s.prefix_value)},
                    {"exact_equal", s.exact_equal},
                    {"witness_count", s.witness_count}});
  }
  return {{"passed", passed}, {"samples", std::move(rows)}};
}

BandDominationReport check_band_domination(const CantorApproximation& a, int samples_per_band,
                                           std::uint64_t seed) {
  if (samples_per_band < 1) throw DomainError("need at least one sample per band");
  BandDominationReport report;
  report.exact_passed = true;
  const auto& r = a.r();
  for (int n = 1; n <= a.level(); ++n) {
    const Rational& rn = r[static_cast<std::size_t>(n)];
    const Rational& rprev = r[static_cast<std::size_t>(n - 1)];
    Rational phi_rn_exact = prefix_measure_level(a, rn) / rn;
    Enclosure phi_rn = phi(a, rn);
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ull);
    for (int k = 0; k < samples_per_band; ++k) {
      Rational s = rn;
      if (k > 0) {
        // Dyadic offset into [r_n, r_{n-1}).
        Rational u(Integer(rng()), Integer(1) << 16);
        u /= Integer(1) << 48;
        s = rn + (rprev - rn) * u;
      }
      BandSample sample;
      sample.band = n;
      sample.s = s;
      sample.level_phi_s = prefix_measure_level(a, s) / s;
      sample.level_phi_rn = phi_rn_exact;
      sample.exact_pass = sample.level_phi_s <= sample.level_phi_rn;
      Enclosure phi_s = phi(a, s);
      if (phi_s.hi <= phi_rn.lo) {
        sample.limit_state = TriState::Pass;
      } else if (phi_s.lo > phi_rn.hi) {
        sample.limit_state = TriState::Fail;
        report.any_limit_fail = true;
      } else {
        sample.limit_state = TriState::Indeterminate;
      }
      if (!sample.exact_pass) report.exact_passed = false;
      report.samples.push_back(std::move(sample));
    }
  }
  return report;
}

nlohmann::json BandDominationReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : samples) {
    rows.push_back({{"band", s.band},
                    {"s", rat_to_json(s.s)},
                    {"s_dec", to_decimal(s.s)},
                    {"phi_s", rat_to_json(s.level_phi_s)},
                    {"phi_band_left", rat_to_json(s.level_phi_rn)},
                    {"exact_pass", s.exact_pass},
                    {"limit_state", to_string(s.limit_state)}});
  }
  return {{"exact_passed", exact_passed},
          {"any_limit_fail", any_limit_fail},
          {"samples", std::move(rows)}};
}

namespace {

TriState compare_strict(const Enclosure& phi_v, const Enclosure& f_v) {
  if (phi_v.hi < f_v.lo) return TriState::Pass;
  if (phi_v.lo >= f_v.hi) return TriState::Fail;
  return TriState::Indeterminate;
}

struct AttemptResult {
  TargetCertificate cert;
  bool decisive = false;
};

AttemptResult run_attempt(const CantorApproximation& approx, const TargetFunction& f,
                          const VerifyOptions& opt, unsigned bits) {
  AttemptResult out;
  TargetCertificate& cert = out.cert;
  cert.final_precision_bits = bits;
  cert.final_level = approx.level();
  cert.measure = approx.measure_bounds();
  if (cert.measure.lo > 0) {
    cert.measure_positive = true;
  } else if (cert.measure.hi <= 0) {
    cert.measure_positive = false;  // certainly measure zero
  }

  const auto& r = approx.r();
  int level = approx.level();
  bool any_indet = false, any_fail = false;
  bool have_margin = false;

  auto push_point = [&](CertificatePoint p) {
    if (!have_margin || p.margin < cert.min_margin) {
      cert.min_margin = p.margin;
      have_margin = true;
    }
    if (p.state == TriState::Fail) any_fail = true;
    if (p.state == TriState::Indeterminate) any_indet = true;
    cert.points.push_back(std::move(p));
  };

  for (int n = 1; n <= level; ++n) {
    CertificatePoint p;
    p.structural = true;
    p.band = n;
    p.s = r[static_cast<std::size_t>(n)];
    p.f_at = pow2(1 - n);
    p.phi_value = phi(approx, p.s);
    p.f_value = f.eval(p.f_at, bits);
    p.margin = p.f_value.lo - p.phi_value.hi;
    p.state = compare_strict(p.phi_value, p.f_value);
    push_point(std::move(p));
  }

  // Round-robin the sampled rows over the bands.
  int remaining = opt.sample_count;
  int per_band = opt.sample_count / level + 1;
  for (int n = 1; n <= level && remaining > 0; ++n) {
    const Rational& rn = r[static_cast<std::size_t>(n)];
    const Rational& rprev = r[static_cast<std::size_t>(n - 1)];
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ull);
    for (int k = 0; k < per_band && remaining > 0; ++k, --remaining) {
      Rational u(Integer(rng()), Integer(1) << 16);
      u /= Integer(1) << 48;
      Rational s = rn + (rprev - rn) * u;
      CertificatePoint p;
      p.structural = false;
      p.band = n;
      p.s = s;
      p.f_at = s;
      p.phi_value = phi(approx, s);
      p.f_value = f.eval(s, bits);
      p.margin = p.f_value.lo - p.phi_value.hi;
      p.state = compare_strict(p.phi_value, p.f_value);
      push_point(std::move(p));
    }
  }

  if (any_fail || (cert.measure.hi <= 0)) {
    cert.state = TriState::Fail;
    cert.holds = false;
    out.decisive = true;
  } else if (!any_indet && cert.measure_positive) {
    cert.state = TriState::Pass;
    cert.holds = true;
    out.decisive = true;
  } else {
    cert.state = TriState::Indeterminate;
    cert.holds = false;
    out.decisive = false;
  }
  return out;
}

}  // namespace

TargetCertificate verify_target(const CantorApproximation& a, const TargetFunction& f,
                                const VerifyOptions& opt) {
  unsigned bits = opt.precision_bits;
  int level = a.level();
  const LambdaSequence& seq = a.sequence();
  int level_cap = std::min(seq.depth(), kMaxEnumeratedLevel);

  AttemptResult attempt = run_attempt(a, f, opt, bits);
  while (!attempt.decisive) {
    bool grew = false;
    if (bits < opt.max_precision_bits) {
      bits = std::min(opt.max_precision_bits, bits * 2);
      grew = true;
    }
    if (opt.allow_level_deepening && level + 2 <= level_cap) {
      level += 2;
      grew = true;
    }
    if (!grew) break;
    CantorApproximation deeper(seq, level, bits);
    attempt = run_attempt(deeper, f, opt, bits);
  }
  return attempt.cert;
}

void require_certificate(const TargetCertificate& cert) {
  if (cert.state == TriState::Pass) return;
  const CertificatePoint* worst = nullptr;
  for (const auto& p : cert.points) {
    if (p.state != TriState::Pass && (!worst || p.margin < worst->margin)) worst = &p;
  }
  std::string detail = "measure " + to_decimal(cert.measure.lo) + ".." + to_decimal(cert.measure.hi);
  if (worst) {
    detail += "; worst point s=" + to_decimal(worst->s) + " phi=[" + to_decimal(worst->phi_value.lo) +
              "," + to_decimal(worst->phi_value.hi) + "] f=[" + to_decimal(worst->f_value.lo) + "," +
              to_decimal(worst->f_value.hi) + "] margin=" + to_decimal(worst->margin);
  }
  if (cert.state == TriState::Fail) {
    throw CertificateFailed("density certificate failed: " + detail);
  }
  throw IndeterminateCertificate("density certificate undecided at the precision cap: " + detail);
}

nlohmann::json TargetCertificate::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : points) {
    rows.push_back({{"kind", p.structural ? "structural" : "sample"},
                    {"band", p.band},
                    {"s", rat_to_json(p.s)},
                    {"s_dec", to_decimal(p.s)},
                    {"f_at", rat_to_json(p.f_at)},
                    {"phi", enc_to_json(p.phi_value)},
                    {"f", enc_to_json(p.f_value)},
                    {"margin_dec", to_decimal(p.margin)},
                    {"state", to_string(p.state)}});
  }
  return {{"holds", holds},
          {"state", to_string(state)},
          {"measure", enc_to_json(measure)},
          {"measure_positive", measure_positive},
          {"min_margin", rat_to_json(min_margin)},
          {"min_margin_dec", to_decimal(min_margin)},
          {"precision_bits", final_precision_bits},
          {"level", final_level},
          {"points", std::move(rows)}};
}

void write_profile_csv(const TargetCertificate& cert, std::ostream& os) {
  std::vector<const CertificatePoint*> rows;
  rows.reserve(cert.points.size());
  for (const auto& p : cert.points) rows.push_back(&p);
  std::sort(rows.begin(), rows.end(),
            [](const CertificatePoint* x, const CertificatePoint* y) { return x->s < y->s; });
  os << "kind,band,s_num,s_den,s_dec,phi_lo_dec,phi_hi_dec,f_lo_dec,f_hi_dec,margin_dec,state\n";
  for (const CertificatePoint* p : rows) {
    auto [sn, sd] = to_strings(p->s);
    os << (p->structural ? "structural" : "sample") << ',' << p->band << ',' << sn << ',' << sd
       << ',' << to_decimal(p->s) << ',' << to_decimal(p->phi_value.lo) << ','
       << to_decimal(p->phi_value.hi) << ',' << to_decimal(p->f_value.lo) << ','
       << to_decimal(p->f_value.hi) << ',' << to_decimal(p->margin) << ','
       << to_string(p->state) << '\n';
  }
}

}  // namespace cantor
