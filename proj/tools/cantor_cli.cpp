#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantor/checks.hpp"
#include "cantor/construction.hpp"
#include "cantor/curves.hpp"
#include "cantor/errors.hpp"
#include "cantor/json_util.hpp"
#include "cantor/render.hpp"
#include "cantor/synthesize.hpp"

namespace {

using namespace cantor;

constexpr int kExitSynthesis = 2;       // InvalidTarget, SynthesisUnverified
constexpr int kExitCertificate = 3;     // CertificateFailed
constexpr int kExitIndeterminate = 4;   // IndeterminateCertificate
constexpr int kExitCurve = 5;           // DegenerateDerivative, NumericalInconsistency
constexpr int kExitUsage = 64;          // bad flags, bad values, parse failures
constexpr int kExitMissingInput = 66;   // absent or empty input file
constexpr int kExitInternal = 70;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidTarget*>(&e) != nullptr ||
      dynamic_cast<const SynthesisUnverified*>(&e) != nullptr)
    return kExitSynthesis;
  if (dynamic_cast<const CertificateFailed*>(&e) != nullptr) return kExitCertificate;
  if (dynamic_cast<const IndeterminateCertificate*>(&e) != nullptr) return kExitIndeterminate;
  if (dynamic_cast<const DegenerateDerivative*>(&e) != nullptr ||
      dynamic_cast<const NumericalInconsistency*>(&e) != nullptr)
    return kExitCurve;
  if (dynamic_cast<const MissingInput*>(&e) != nullptr) return kExitMissingInput;
  if (dynamic_cast<const ParseError*>(&e) != nullptr ||
      dynamic_cast<const DomainError*>(&e) != nullptr ||
      dynamic_cast<const IndexOutOfRange*>(&e) != nullptr ||
      dynamic_cast<const ResourceLimit*>(&e) != nullptr)
    return kExitUsage;
  return kExitInternal;
}

// Config files are flat JSON objects; a nested object applies its entries to
// the subcommand of the same name, e.g. {"synthesize": {"depth": 10}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    nlohmann::json doc = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      if (!opt->results().empty()) {
        doc[opt->get_lnames()[0]] = opt->results().size() == 1
                                        ? nlohmann::json(opt->results()[0])
                                        : nlohmann::json(opt->results());
      } else if (default_also && !opt->get_default_str().empty()) {
        doc[opt->get_lnames()[0]] = opt->get_default_str();
      }
    }
    return doc.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    auto add = [&items](std::vector<std::string> parents, const std::string& name,
                        const nlohmann::json& v) {
      CLI::ConfigItem item;
      item.parents = std::move(parents);
      item.name = name;
      if (v.is_array()) {
        for (const auto& el : v)
          item.inputs.push_back(el.is_string() ? el.get<std::string>() : el.dump());
      } else {
        item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
      items.push_back(std::move(item));
    };
    for (const auto& [key, value] : doc.items()) {
      if (value.is_object()) {
        for (const auto& [k2, v2] : value.items()) add({key}, k2, v2);
      } else {
        add({}, key, value);
      }
    }
    return items;
  }
};

unsigned default_precision() {
  const char* s = std::getenv("CANTOR_PRECISION");
  if (s == nullptr || *s == '\0') return kDefaultPrecisionBits;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0') throw ParseError("CANTOR_PRECISION is not an integer");
  if (v < static_cast<long>(kMinPrecisionBits) || v > static_cast<long>(kMaxPrecisionBits))
    throw DomainError("CANTOR_PRECISION must lie in [32, 256]");
  return static_cast<unsigned>(v);
}

TargetFunction load_target(const std::string& expr_text, const std::string& table_path) {
  if (!expr_text.empty() && !table_path.empty())
    throw DomainError("--f and --table are mutually exclusive");
  if (expr_text.empty() && table_path.empty())
    throw DomainError("the bound is missing: give --f or --table");
  if (!expr_text.empty()) return TargetFunction::expression(expr_text);
  return TargetFunction::from_json(read_json_file(table_path));
}

template <typename Fn>
void write_text_file(const std::string& path, Fn&& fill) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot open for writing: " + path);
  fill(os);
  os.flush();
  if (!os) throw DomainError("write failed: " + path);
}

std::string enc_str(const Enclosure& e, int digits = 12) {
  return "[" + to_decimal(e.lo, digits) + ", " + to_decimal(e.hi, digits) + "]";
}

// ---------------------------------------------------------------------------

struct SynthesizeArgs {
  std::string f_text, table_path, out_path, report_path;
  int depth = 14;
  std::string headroom = "1/16";
  int horizon_multiple = 4;
  unsigned precision = kDefaultPrecisionBits;
};

int run_synthesize(const SynthesizeArgs& a) {
  SynthesisOptions opt;
  opt.depth = a.depth;
  opt.headroom = parse_rational(a.headroom);
  opt.horizon_multiple = a.horizon_multiple;
  opt.precision_bits = a.precision;
  TargetFunction f = load_target(a.f_text, a.table_path);

  SynthesisResult res = synthesize_lambda(f, opt);

  std::cout << "bound: " << f.describe() << "\n";
  std::cout << "  n  -log f(2^(1-n))   exponent l_n       ratio lambda_n     margin\n";
  for (const auto& row : res.rows) {
    std::cout << std::setw(3) << row.n << "  " << std::left << std::setw(17)
              << to_decimal(row.neg_log_f.lo, 10) << "  " << std::setw(17)
              << to_decimal(row.ell, 10) << "  " << std::setw(17) << to_decimal(row.lambda, 10)
              << "  " << to_decimal(row.margin, 6) << std::right << "\n";
  }
  std::cout << "measure: " << enc_str(res.measure) << "\n";
  std::cout << "min margin: " << to_decimal(res.min_margin, 6) << "\n";
  std::cout << "tail domination certified through level " << res.horizon << "\n";

  if (!a.out_path.empty()) write_json_file(a.out_path, res.sequence.to_json());
  if (!a.report_path.empty()) write_json_file(a.report_path, res.to_json());
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string seq_path, f_text, table_path, profile_path, report_path;
  int level = 0;  // 0: smallest of depth and 12
  int samples = 128;
  int band_samples = 4;
  int maximality_windows = 12;
  std::uint64_t seed = 1;
  unsigned precision = kDefaultPrecisionBits;
  unsigned max_precision = kMaxPrecisionBits;
  bool no_deepen = false;
};

int run_verify(const VerifyArgs& a) {
  LambdaSequence seq = LambdaSequence::from_json(read_json_file(a.seq_path), a.precision);
  int level = a.level > 0 ? a.level : std::min(seq.depth(), 12);
  if (level > seq.depth()) throw DomainError("level exceeds the sequence depth");
  if (level > kMaxEnumeratedLevel) throw DomainError("level exceeds the enumeration cap");
  CantorApproximation approx(seq, level, a.precision);
  TargetFunction f = load_target(a.f_text, a.table_path);

  VerifyOptions vo;
  vo.sample_count = a.samples;
  vo.seed = a.seed;
  vo.precision_bits = a.precision;
  vo.max_precision_bits = a.max_precision;
  vo.allow_level_deepening = !a.no_deepen;
  TargetCertificate cert = verify_target(approx, f, vo);

  nlohmann::json report;
  report["certificate"] = cert.to_json();

  bool bands_ok = true;
  if (a.band_samples > 0) {
    auto br = check_band_domination(approx, a.band_samples, a.seed);
    report["band_domination"] = br.to_json();
    bands_ok = br.exact_passed && !br.any_limit_fail;
    std::cout << "band domination: " << (bands_ok ? "pass" : "FAIL") << " ("
              << br.samples.size() << " samples)\n";
  }
  bool windows_ok = true;
  if (a.maximality_windows > 0) {
    std::vector<Rational> windows;
    for (int i = 1; i <= a.maximality_windows; ++i)
      windows.emplace_back(2 * i - 1, 2 * a.maximality_windows);
    auto mr = check_prefix_maximality(approx, windows);
    report["prefix_maximality"] = mr.to_json();
    windows_ok = mr.passed;
    std::cout << "prefix maximality: " << (windows_ok ? "pass" : "FAIL") << " ("
              << mr.samples.size() << " windows)\n";
  }

  std::size_t structural = 0;
  for (const auto& p : cert.points) structural += p.structural ? 1 : 0;
  std::cout << "certificate: " << to_string(cert.state) << "\n";
  std::cout << "points: " << cert.points.size() << " (" << structural << " structural, "
            << cert.points.size() - structural << " sampled)\n";
  std::cout << "min margin: " << to_decimal(cert.min_margin, 6) << "\n";
  std::cout << "measure: " << enc_str(cert.measure)
            << (cert.measure_positive ? "" : "  (NOT positive)") << "\n";
  std::cout << "level: " << cert.final_level << "  precision: " << cert.final_precision_bits
            << " bits\n";

  if (!a.profile_path.empty())
    write_text_file(a.profile_path, [&](std::ostream& os) { write_profile_csv(cert, os); });
  if (!a.report_path.empty()) write_json_file(a.report_path, report);

  if (!bands_ok) throw CertificateFailed("band domination spot check failed");
  if (!windows_ok) throw CertificateFailed("prefix maximality spot check failed");
  require_certificate(cert);
  return 0;
}

// ---------------------------------------------------------------------------

struct LevelsArgs {
  std::string seq_path, svg_path, csv_path;
  int levels = 5;
  unsigned precision = kDefaultPrecisionBits;
};

int run_levels(const LevelsArgs& a) {
  LambdaSequence seq = LambdaSequence::from_json(read_json_file(a.seq_path), a.precision);
  std::cout << "level  components  component length   gap opened\n";
  std::cout << "    0           1  1                  -\n";
  for (int n = 1; n <= a.levels; ++n) {
    auto q = level_quantities(seq, n);
    std::cout << std::setw(5) << n << "  " << std::setw(10) << (std::int64_t{1} << n) << "  "
              << std::left << std::setw(17) << to_decimal(q.r, 10) << "  "
              << to_decimal(q.g, 10) << std::right << "\n";
  }
  if (!a.svg_path.empty())
    write_text_file(a.svg_path, [&](std::ostream& os) { write_levels_svg(seq, a.levels, os); });
  if (!a.csv_path.empty())
    write_text_file(a.csv_path, [&](std::ostream& os) { write_levels_csv(seq, a.levels, os); });
  return 0;
}

// ---------------------------------------------------------------------------

struct CurveArgs {
  std::string name;
  std::vector<std::string> params;  // key=value pairs for --name
  std::vector<std::string> poly;    // coordinate expressions, or one "(x, y)" tuple
  double t0 = 0.0, t1 = 1.0;
  std::string seq_path, scan_csv_path, report_path;
  int depth = 12;
  int level = 0;
  int samples = 48;
  int grid = 400;
  int rounds = 6;
  int rho_outer = 128, rho_inner = 256;
  double rho_override = 0.0;
  double min_separation = 0.0;
  std::uint64_t seed = 1;
  unsigned precision = kDefaultPrecisionBits;
  bool demo_attaining = false;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got: " + kv);
    try {
      std::size_t used = 0;
      double v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw ParseError("trailing junk in value: " + kv);
      out[kv.substr(0, eq)] = v;
    } catch (const std::logic_error&) {
      throw ParseError("value is not a number: " + kv);
    }
  }
  return out;
}

// Accepts either repeated coordinate expressions or a single parenthesized
// tuple "(t, t^2/2)"; commas inside nested parentheses are left alone.
std::vector<std::string> split_coords(const std::vector<std::string>& raw) {
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  if (raw.size() != 1) return raw;
  std::string s = trim(raw[0]);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return raw;
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

int run_curve(const CurveArgs& a) {
  if (a.name.empty() == a.poly.empty())
    throw DomainError("give the curve as exactly one of --name or --poly");
  ParametricCurve curve = a.poly.empty()
                              ? builtin_curve(a.name, parse_params(a.params))
                              : curve_from_expressions(split_coords(a.poly), a.t0, a.t1);
  if (!curve.arc_length_flag) curve = arclength_reparametrize(curve);
  const double length = curve.domain_length();

  double rho = a.rho_override;
  if (rho <= 0) {
    FindRhoOptions ro;
    ro.outer_grid = a.rho_outer;
    ro.inner_grid = a.rho_inner;
    rho = find_rho(curve, ro);
  } else if (rho > length) {
    throw DomainError("--rho exceeds the curve length");
  }

  std::cout << "curve: " << curve.name << "  length " << std::setprecision(10) << length
            << "  rho " << rho << "\n";
  std::cout << "chord/arc profile (arc separation x, worst ratio):\n";
  nlohmann::json profile = nlohmann::json::array();
  for (int k = 0; k < 8; ++k) {
    double x = std::ldexp(rho, -k);
    double ratio = chord_ratio_inf(curve, x, 512);
    std::cout << "  x = " << std::setw(13) << x << "   ratio = " << ratio << "\n";
    profile.push_back({{"x", x}, {"ratio", ratio}});
  }

  std::optional<SynthesisResult> synth;
  std::optional<TargetFunction> target;
  std::optional<LambdaSequence> seq;
  if (!a.seq_path.empty()) {
    seq = LambdaSequence::from_json(read_json_file(a.seq_path), a.precision);
  } else {
    target = curve_chord_target(curve, rho);
    SynthesisOptions so;
    so.depth = a.depth;
    so.precision_bits = a.precision;
    synth = synthesize_lambda(*target, so);
    seq = synth->sequence;
  }

  int level = a.level > 0 ? a.level : std::min(seq->depth(), 12);
  if (level > seq->depth()) throw DomainError("level exceeds the sequence depth");
  if (level > kMaxEnumeratedLevel) throw DomainError("level exceeds the enumeration cap");
  CantorApproximation approx(*seq, level, a.precision);
  std::cout << "set: depth " << seq->depth() << "  level " << level << "  measure "
            << enc_str(approx.measure_bounds()) << "\n";

  std::optional<TargetCertificate> cert;
  if (target) {
    VerifyOptions vo;
    vo.sample_count = a.samples;
    vo.seed = a.seed;
    vo.precision_bits = a.precision;
    cert = verify_target(approx, *target, vo);
    std::cout << "density below chord profile: " << to_string(cert->state) << " (min margin "
              << to_decimal(cert->min_margin, 6) << ")\n";
  } else {
    std::cout << "density certificate skipped: sequence supplied, no bound to check against\n";
  }

  ScalarArcFunction F = build_indicator_primitive(approx, curve, rho);
  ScalarArcFunction H = build_penalized_primitive(approx, curve, rho);
  ScanOptions so;
  so.coarse_grid = a.grid;
  so.refine_rounds = a.rounds;
  so.min_separation = a.min_separation > 0
                          ? a.min_separation
                          : 4.0 * rho * to_double(approx.component_length());
  ScanResult fres = attainment_scan(F, curve, so);
  ScanResult hres = attainment_scan(H, curve, so);

  auto print_scan = [](const char* tag, const ScanResult& r) {
    std::cout << tag << ": sup " << std::setprecision(10) << r.sup_estimate << "  attained "
              << (r.attained ? "yes" : "no");
    if (!r.witnesses.empty())
      std::cout << "  (best pair t = " << r.witnesses.front().t
                << ", s = " << r.witnesses.front().s << ")";
    std::cout << "\n";
  };
  print_scan("F", fres);
  print_scan("H", hres);

  auto sf = structural_pair_quotients(F, curve, approx, level);
  auto sh = structural_pair_quotients(H, curve, approx, level);
  if (!sf.empty()) {
    std::cout << "structural pairs (0, rho r_n) at n = " << level << ": F quotient "
              << sf.back().quotient << ", H quotient " << sh.back().quotient << "\n";
  }

  std::optional<ScanResult> control;
  if (a.demo_attaining) {
    ParametricCurve seg = make_line(2.0);
    ScalarArcFunction dist = distance_from_start(seg);
    ScanOptions co;
    co.coarse_grid = 50;
    co.refine_rounds = 3;
    control = attainment_scan(dist, seg, co);
    std::cout << "control (distance to the start of a straight segment): sup "
              << control->sup_estimate << "  attained " << (control->attained ? "yes" : "no")
              << "\n";
  }

  if (!a.scan_csv_path.empty())
    write_text_file(a.scan_csv_path, [&](std::ostream& os) { write_scan_csv(fres, os); });
  if (!a.report_path.empty()) {
    nlohmann::json report;
    report["curve"] = {{"name", curve.name}, {"length", length}, {"rho", rho},
                       {"profile", profile}};
    report["sequence"] = seq->to_json();
    if (synth) report["synthesis"] = synth->to_json();
    if (target) report["bound"] = target->to_json();
    if (cert) report["certificate"] = cert->to_json();
    report["scan_indicator"] = fres.to_json();
    report["scan_penalized"] = hres.to_json();
    auto pairs_json = [](const std::vector<LipschitzSample>& v) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& w : v)
        arr.push_back({{"t", w.t}, {"s", w.s}, {"arc", w.arc}, {"chord", w.chord},
                       {"quotient", w.quotient}});
      return arr;
    };
    report["structural_indicator"] = pairs_json(sf);
    report["structural_penalized"] = pairs_json(sh);
    if (control) report["control"] = control->to_json();
    write_json_file(a.report_path, report);
  }

  if (cert) require_certificate(*cert);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    unsigned precision = default_precision();

    CLI::App app{
        "Fat Cantor sets dominated by a density bound, with certified rational\n"
        "arithmetic, and Lipschitz quotient scans along arc-length curves."};
    app.require_subcommand(1);
    app.fallthrough();  // lets "--config" appear after the subcommand name
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file supplying any of the flags");
    app.failure_message(CLI::FailureMessage::help);

    SynthesizeArgs sa;
    sa.precision = precision;
    auto* syn = app.add_subcommand("synthesize",
                                   "Build a ratio sequence whose density profile stays "
                                   "strictly below a bound");
    syn->add_option("--f", sa.f_text, "bound as a formula in x");
    syn->add_option("--table", sa.table_path, "bound as a tabulated JSON file");
    syn->add_option("--depth", sa.depth, "explicit levels to build")->check(CLI::Range(2, 40));
    syn->add_option("--headroom", sa.headroom, "additive exponent margin, rational in (0,1]");
    syn->add_option("--horizon-multiple", sa.horizon_multiple,
                    "re-check tail domination out to multiple*depth")
        ->check(CLI::Range(1, 16));
    syn->add_option("--precision", sa.precision, "working precision bits")
        ->check(CLI::Range(32, 256));
    syn->add_option("--out", sa.out_path, "write the sequence JSON here");
    syn->add_option("--report", sa.report_path, "write the full synthesis report JSON here");

    VerifyArgs va;
    va.precision = precision;
    auto* ver = app.add_subcommand("verify",
                                   "Check a sequence file against a bound and emit a "
                                   "certificate");
    ver->add_option("--seq", va.seq_path, "sequence JSON file")->required();
    ver->add_option("--f", va.f_text, "bound as a formula in x");
    ver->add_option("--table", va.table_path, "bound as a tabulated JSON file");
    ver->add_option("--level", va.level, "construction level (default: depth, at most 12)")
        ->check(CLI::Range(1, 20));
    ver->add_option("--samples", va.samples, "random in-band sample count")
        ->check(CLI::Range(1, 100000));
    ver->add_option("--band-samples", va.band_samples,
                    "exact band-domination samples per band (0 skips)")
        ->check(CLI::Range(0, 10000));
    ver->add_option("--maximality-windows", va.maximality_windows,
                    "exact prefix-maximality windows (0 skips)")
        ->check(CLI::Range(0, 10000));
    ver->add_option("--seed", va.seed, "sampling seed");
    ver->add_option("--precision", va.precision, "starting precision bits")
        ->check(CLI::Range(32, 256));
    ver->add_option("--max-precision", va.max_precision, "escalation cap in bits")
        ->check(CLI::Range(32, 256));
    ver->add_flag("--no-deepen", va.no_deepen, "never escalate the construction level");
    ver->add_option("--profile", va.profile_path, "write the certificate rows as CSV here");
    ver->add_option("--report", va.report_path, "write the certificate JSON here");

    LevelsArgs la;
    la.precision = precision;
    auto* lev = app.add_subcommand("levels",
                                   "Draw construction levels 0..n as SVG bars and exact "
                                   "CSV endpoints");
    lev->add_option("--seq", la.seq_path, "sequence JSON file")->required();
    lev->add_option("--levels", la.levels, "deepest level to draw")->check(CLI::Range(0, 10));
    lev->add_option("--svg", la.svg_path, "SVG output path");
    lev->add_option("--csv", la.csv_path, "CSV output path");
    lev->add_option("--precision", la.precision, "tail precision bits")
        ->check(CLI::Range(32, 256));

    CurveArgs ca;
    ca.precision = precision;
    auto* cur = app.add_subcommand("curve",
                                   "Carry a set onto a curve and scan the Lipschitz "
                                   "quotients of its primitives");
    cur->add_option("--name", ca.name,
                    "built-in curve: line, circle, ellipse, parabola, spiral");
    cur->add_option("--poly", ca.poly,
                    "coordinate expressions in t, repeated or as one \"(x(t), y(t))\" tuple");
    cur->add_option("--param", ca.params, "built-in curve parameter key=value");
    cur->add_option("--t0", ca.t0, "parameter interval start");
    cur->add_option("--t1", ca.t1, "parameter interval end");
    cur->add_option("--seq", ca.seq_path,
                    "sequence JSON file (default: synthesize one against the curve's own "
                    "chord profile)");
    cur->add_option("--depth", ca.depth, "synthesis depth when no sequence is supplied")
        ->check(CLI::Range(2, 40));
    cur->add_option("--level", ca.level, "construction level (default: depth, at most 12)")
        ->check(CLI::Range(1, 20));
    cur->add_option("--samples", ca.samples, "certificate sample count")
        ->check(CLI::Range(1, 100000));
    cur->add_option("--grid", ca.grid, "coarse scan grid")->check(CLI::Range(8, 100000));
    cur->add_option("--rounds", ca.rounds, "scan refinement rounds")->check(CLI::Range(1, 40));
    cur->add_option("--rho-outer", ca.rho_outer, "outer grid for the dip search")
        ->check(CLI::Range(16, 100000));
    cur->add_option("--rho-inner", ca.rho_inner, "positional grid for the dip search")
        ->check(CLI::Range(16, 100000));
    cur->add_option("--rho", ca.rho_override, "skip the dip search and use this rho");
    cur->add_option("--min-sep", ca.min_separation,
                    "scan pair separation floor (default: 4 rho r_level)");
    cur->add_option("--seed", ca.seed, "certificate sampling seed");
    cur->add_option("--precision", ca.precision, "precision bits")->check(CLI::Range(32, 256));
    cur->add_flag("--demo-attaining", ca.demo_attaining,
                  "also scan the distance function on a straight segment, where the "
                  "supremum is attained");
    cur->add_option("--scan-csv", ca.scan_csv_path, "write the indicator-primitive scan CSV");
    cur->add_option("--report", ca.report_path, "write the full curve report JSON");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kExitUsage;
    }

    if (syn->parsed()) return run_synthesize(sa);
    if (ver->parsed()) return run_verify(va);
    if (lev->parsed()) return run_levels(la);
    if (cur->parsed()) return run_curve(ca);
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
