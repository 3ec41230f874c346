// Python bindings: exact rationals cross the boundary as fractions.Fraction,
// report-like results cross as plain dicts (mirroring their JSON form), and
// the core value types are bound as classes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cantor/checks.hpp"
#include "cantor/construction.hpp"
#include "cantor/curves.hpp"
#include "cantor/density.hpp"
#include "cantor/errors.hpp"
#include "cantor/render.hpp"
#include "cantor/synthesize.hpp"

namespace py = pybind11;

namespace pybind11 {
namespace detail {

// mpq_class <-> fractions.Fraction (also accepts int and "p/q" strings on the
// way in). Floats are rejected: callers should decide how to rationalize them.
template <>
struct type_caster<mpq_class> {
  PYBIND11_TYPE_CASTER(mpq_class, const_name("Fraction"));

  bool load(handle src, bool) {
    if (src.is_none() || PyFloat_Check(src.ptr())) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = cantor::parse_rational(py::cast<std::string>(src));
        return true;
      }
      if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
        std::string num = py::cast<std::string>(py::str(src.attr("numerator")));
        std::string den = py::cast<std::string>(py::str(src.attr("denominator")));
        value = cantor::parse_rational(num + "/" + den);
        return true;
      }
    } catch (...) {
      return false;
    }
    return false;
  }

  static handle cast(const mpq_class& v, return_value_policy, handle) {
    auto parts = cantor::to_strings(v);
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::str(parts.first + "/" + parts.second)).release();
  }
};

}  // namespace detail
}  // namespace pybind11

namespace {

using namespace cantor;

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

nlohmann::json py_to_json(py::handle obj) {
  std::string dumped = py::cast<std::string>(py::module_::import("json").attr("dumps")(obj));
  return nlohmann::json::parse(dumped);
}

std::vector<TablePoint> table_from_python(const py::iterable& rows) {
  std::vector<TablePoint> points;
  for (py::handle row : rows) {
    auto seq = py::cast<py::sequence>(row);
    Rational x = py::cast<Rational>(seq[0]);
    if (py::len(seq) == 2) {
      points.push_back({x, Enclosure(py::cast<Rational>(seq[1]))});
    } else {
      points.push_back({x, Enclosure(py::cast<Rational>(seq[1]), py::cast<Rational>(seq[2]))});
    }
  }
  return points;
}

py::list intervals_to_python(const std::vector<ClosedInterval>& intervals) {
  py::list out;
  for (const auto& c : intervals) out.append(py::make_tuple(c.left, c.right));
  return out;
}

py::dict sample_to_python(const LipschitzSample& s) {
  py::dict d;
  d["t"] = s.t;
  d["s"] = s.s;
  d["arc"] = s.arc;
  d["chord"] = s.chord;
  d["quotient"] = s.quotient;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Positive-measure Cantor sets with certified density bounds, and "
      "Lipschitz-quotient scans of their primitives along unit-speed curves.";

  // Exception hierarchy: base first so subclass translators run first.
  py::object base = py::register_exception<Error>(m, "CantorError");
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<InvalidTarget>(m, "InvalidTarget", base.ptr());
  py::register_exception<SynthesisUnverified>(m, "SynthesisUnverified", base.ptr());
  py::register_exception<CertificateFailed>(m, "CertificateFailed", base.ptr());
  py::register_exception<IndeterminateCertificate>(m, "IndeterminateCertificate", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
  py::register_exception<DegenerateDerivative>(m, "DegenerateDerivative", base.ptr());
  py::register_exception<NumericalInconsistency>(m, "NumericalInconsistency", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<MissingInput>(m, "MissingInput", base.ptr());

  m.attr("DEFAULT_PRECISION_BITS") = kDefaultPrecisionBits;
  m.attr("MIN_PRECISION_BITS") = kMinPrecisionBits;
  m.attr("MAX_PRECISION_BITS") = kMaxPrecisionBits;
  m.attr("MAX_ENUMERATED_LEVEL") = kMaxEnumeratedLevel;

  py::class_<Enclosure>(m, "Enclosure", "Closed rational interval [lo, hi] with outward arithmetic.")
      .def(py::init<Rational, Rational>(), py::arg("lo"), py::arg("hi"))
      .def_readonly("lo", &Enclosure::lo)
      .def_readonly("hi", &Enclosure::hi)
      .def("width", &Enclosure::width)
      .def("midpoint", &Enclosure::midpoint)
      .def("contains", &Enclosure::contains, py::arg("v"))
      .def("is_point", &Enclosure::is_point)
      .def("__repr__", [](const Enclosure& e) {
        return "Enclosure(" + to_decimal(e.lo) + ", " + to_decimal(e.hi) + ")";
      });

  py::class_<LambdaSequence>(m, "LambdaSequence",
                             "Subdivision ratios: level n halves each component and keeps the "
                             "fraction 1 - lambda_n of each half. Beyond the explicit prefix the "
                             "ratios continue as 1 - exp(-tail_base * tail_ratio^(j - depth)).")
      .def(py::init<std::vector<Rational>, Rational, Rational, unsigned>(), py::arg("prefix"),
           py::arg("tail_base"), py::arg("tail_ratio"), py::arg("bits") = kDefaultPrecisionBits)
      .def_static("truncated", &LambdaSequence::truncated, py::arg("prefix"),
                  "Sequence whose ratios vanish beyond the prefix; the level set is exact.")
      .def_property_readonly("depth", &LambdaSequence::depth)
      .def("ratio", &LambdaSequence::lambda, py::arg("n"), "lambda_n for 1 <= n <= depth.")
      .def_property_readonly("prefix", &LambdaSequence::prefix)
      .def_property_readonly("tail_base", &LambdaSequence::tail_base)
      .def_property_readonly("tail_ratio", &LambdaSequence::tail_ratio)
      .def("has_tail", &LambdaSequence::has_tail)
      .def("divergent_tail", &LambdaSequence::divergent_tail)
      .def("tail_product", &LambdaSequence::tail_product, py::arg("bits") = kDefaultPrecisionBits,
           "Certified enclosure of prod_{j > depth} (1 - lambda_j).")
      .def("to_dict", [](const LambdaSequence& s) { return json_to_py(s.to_json()); })
      .def_static(
          "from_dict",
          [](py::handle doc, unsigned bits) { return LambdaSequence::from_json(py_to_json(doc), bits); },
          py::arg("doc"), py::arg("bits") = kDefaultPrecisionBits)
      .def("__repr__", [](const LambdaSequence& s) {
        return "LambdaSequence(depth=" + std::to_string(s.depth()) +
               (s.has_tail() ? ", tail)" : ", truncated)");
      });

  m.def(
      "level_quantities",
      [](const LambdaSequence& seq, int n) {
        auto q = level_quantities(seq, n);
        return py::make_tuple(q.r, q.g, q.level_measure);
      },
      py::arg("seq"), py::arg("n"),
      "(r_n, g_n, kept measure 2^n r_n) in closed form, 1 <= n <= depth.");
  m.def("component_lengths", &component_lengths, py::arg("seq"), py::arg("upto"),
        "[r_0, ..., r_upto].");
  m.def("gap_lengths", &gap_lengths, py::arg("seq"), py::arg("upto"), "[g_1, ..., g_upto].");
  m.def(
      "level_intervals",
      [](const LambdaSequence& seq, int n) { return intervals_to_python(level_intervals(seq, n)); },
      py::arg("seq"), py::arg("n"), "The 2^n sorted components of construction step n.");

  py::class_<CantorApproximation>(
      m, "CantorApproximation",
      "Level-N geometry of the set: cached component endpoints plus a certified "
      "tail factor relating level-N lengths to limit-set measure.")
      .def(py::init<LambdaSequence, int, unsigned>(), py::arg("seq"), py::arg("level"),
           py::arg("bits") = kDefaultPrecisionBits)
      .def_property_readonly("sequence", &CantorApproximation::sequence)
      .def_property_readonly("level", &CantorApproximation::level)
      .def_property_readonly("precision_bits", &CantorApproximation::precision_bits)
      .def_property_readonly(
          "components",
          [](const CantorApproximation& a) { return intervals_to_python(a.components()); })
      .def_property_readonly("r", &CantorApproximation::r)
      .def_property_readonly("g", &CantorApproximation::g)
      .def_property_readonly("component_length", &CantorApproximation::component_length)
      .def_property_readonly("tail_factor", &CantorApproximation::tail_factor)
      .def("measure_bounds", &CantorApproximation::measure_bounds)
      .def("__repr__", [](const CantorApproximation& a) {
        return "CantorApproximation(level=" + std::to_string(a.level()) + ")";
      });

  py::class_<TargetFunction>(m, "TargetFunction",
                             "A density bound f : (0,1] -> [0,1], evaluated to certified "
                             "enclosures. Build from an expression, a table, or an envelope.")
      .def_static("expression", &TargetFunction::expression, py::arg("text"))
      .def_static(
          "tabulated",
          [](const py::iterable& rows, bool non_increasing) {
            return TargetFunction::tabulated(table_from_python(rows), non_increasing);
          },
          py::arg("points"), py::arg("non_increasing"),
          "Step function through rows (x, value) or (x, lo, hi).")
      .def_static(
          "tabulated_with_quadratic_tail",
          [](const py::iterable& rows, const Rational& coeff) {
            return TargetFunction::tabulated_with_quadratic_tail(table_from_python(rows), coeff);
          },
          py::arg("points"), py::arg("coeff"),
          "Step function whose continuation below the first abscissa is max(v1, 1 - coeff*x^2).")
      .def("eval", &TargetFunction::eval, py::arg("x"), py::arg("bits") = kDefaultPrecisionBits)
      .def("eval_range", &TargetFunction::eval_range, py::arg("a"), py::arg("b"),
           py::arg("bits") = kDefaultPrecisionBits)
      .def_property_readonly("non_increasing", &TargetFunction::non_increasing)
      .def_property_readonly("source", &TargetFunction::describe)
      .def("to_dict", [](const TargetFunction& f) { return json_to_py(f.to_json()); })
      .def_static("from_dict", [](py::handle doc) { return TargetFunction::from_json(py_to_json(doc)); },
                  py::arg("doc"))
      .def("__repr__",
           [](const TargetFunction& f) { return "TargetFunction(" + f.describe() + ")"; });

  m.def("decreasing_envelope", &decreasing_envelope, py::arg("g"), py::arg("grid"),
        "Certified non-increasing lower envelope inf_{u <= s} g(u) through the grid.");

  m.def("prefix_measure_level", &prefix_measure_level, py::arg("approx"), py::arg("x"),
        "Exact level-N measure of [0, x] inside the approximation.");
  m.def("prefix_measure_bounds", &prefix_measure_bounds, py::arg("approx"), py::arg("x"),
        "Enclosure of the limit-set measure of [0, x].");
  m.def("phi", &phi, py::arg("approx"), py::arg("s"),
        "Enclosure of the maximal density at window length s: the best measure of "
        "any window of length s, divided by s.");
  m.def(
      "phi_bruteforce",
      [](const CantorApproximation& a, const Rational& s) {
        BruteForceResult res = phi_bruteforce(a, s);
        py::dict d;
        d["max_value"] = py::cast(res.max_value);
        py::list wits;
        for (const auto& w : res.witnesses) wits.append(py::cast(w));
        d["witnesses"] = wits;
        return d;
      },
      py::arg("approx"), py::arg("s"),
      "Exhaustive level-N maximizer over all windows of length s; left endpoints of "
      "maximizing windows under 'witnesses'.");

  m.def(
      "verify_target",
      [](const CantorApproximation& a, const TargetFunction& f, int sample_count,
         std::uint64_t seed, unsigned precision_bits, unsigned max_precision_bits,
         bool allow_level_deepening) {
        VerifyOptions opt;
        opt.sample_count = sample_count;
        opt.seed = seed;
        opt.precision_bits = precision_bits;
        opt.max_precision_bits = max_precision_bits;
        opt.allow_level_deepening = allow_level_deepening;
        return json_to_py(verify_target(a, f, opt).to_json());
      },
      py::arg("approx"), py::arg("f"), py::arg("sample_count") = 128, py::arg("seed") = 1,
      py::arg("precision_bits") = kDefaultPrecisionBits,
      py::arg("max_precision_bits") = kMaxPrecisionBits, py::arg("allow_level_deepening") = true,
      "Certificate that the maximal density stays below f across scales and the "
      "set has positive measure; a dict with 'holds', 'state', per-point rows.");
  m.def(
      "check_band_domination",
      [](const CantorApproximation& a, int samples_per_band, std::uint64_t seed) {
        return json_to_py(check_band_domination(a, samples_per_band, seed).to_json());
      },
      py::arg("approx"), py::arg("samples_per_band"), py::arg("seed") = 1,
      "Exact in-band check that the density never exceeds its value at the band's "
      "left endpoint.");
  m.def(
      "check_prefix_maximality",
      [](const CantorApproximation& a, const std::vector<Rational>& window_lengths) {
        return json_to_py(check_prefix_maximality(a, window_lengths).to_json());
      },
      py::arg("approx"), py::arg("window_lengths"),
      "Exact check that the prefix window [0, s] is a measure maximizer among all "
      "windows of length s.");

  py::class_<SynthesisResult>(m, "SynthesisResult")
      .def_readonly("sequence", &SynthesisResult::sequence)
      .def_readonly("measure", &SynthesisResult::measure)
      .def_readonly("min_margin", &SynthesisResult::min_margin)
      .def_readonly("horizon", &SynthesisResult::horizon)
      .def("to_dict", [](const SynthesisResult& r) { return json_to_py(r.to_json()); })
      .def("__repr__", [](const SynthesisResult& r) {
        return "SynthesisResult(depth=" + std::to_string(r.sequence.depth()) + ")";
      });

  m.def(
      "synthesize_lambda",
      [](const TargetFunction& f, int depth, const Rational& headroom, unsigned precision_bits,
         int horizon_multiple) {
        SynthesisOptions opt;
        opt.depth = depth;
        opt.headroom = headroom;
        opt.precision_bits = precision_bits;
        opt.horizon_multiple = horizon_multiple;
        return synthesize_lambda(f, opt);
      },
      py::arg("f"), py::arg("depth") = 14, py::arg("headroom") = Rational(1, 16),
      py::arg("precision_bits") = kDefaultPrecisionBits, py::arg("horizon_multiple") = 4,
      "Ratio sequence whose limit set has positive measure and maximal density "
      "certified below f at every dyadic scale out to the horizon.");

  py::class_<ParametricCurve>(m, "ParametricCurve")
      .def_readonly("name", &ParametricCurve::name)
      .def_readonly("dimension", &ParametricCurve::dimension)
      .def_readonly("t0", &ParametricCurve::t0)
      .def_readonly("t1", &ParametricCurve::t1)
      .def_readonly("unit_speed", &ParametricCurve::arc_length_flag)
      .def("domain_length", &ParametricCurve::domain_length)
      .def(
          "position",
          [](const ParametricCurve& c, double t) {
            Vec3 p = c.position(t);
            return py::make_tuple(p[0], p[1], p[2]);
          },
          py::arg("t"))
      .def("__repr__", [](const ParametricCurve& c) { return "ParametricCurve(" + c.name + ")"; });

  m.def("builtin_curve", &builtin_curve, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{},
        "line, circle, ellipse, parabola or spiral; parameters by keyword.");
  m.def("curve_from_expressions", &curve_from_expressions, py::arg("coords"), py::arg("t0"),
        py::arg("t1"), py::arg("name") = "custom",
        "Curve from per-coordinate expressions in t (+ - * / and integer ^).");
  m.def("curve_length", &curve_length, py::arg("curve"), py::arg("tol") = 1e-10);
  m.def("max_speed_deviation", &max_speed_deviation, py::arg("curve"), py::arg("grid") = 1024);
  m.def("arclength_reparametrize", &arclength_reparametrize, py::arg("curve"),
        py::arg("tol") = 1e-10, "Unit-speed reparametrization onto [0, length].");
  m.def("chord_ratio_inf", &chord_ratio_inf, py::arg("curve"), py::arg("x"),
        py::arg("grid_size") = 2048,
        "inf over t of |pos(t+x) - pos(t)| / x for a unit-speed curve.");
  m.def(
      "find_rho",
      [](const ParametricCurve& c, int outer_grid, int inner_grid, int bisection_rounds) {
        FindRhoOptions opt;
        opt.outer_grid = outer_grid;
        opt.inner_grid = inner_grid;
        opt.bisection_rounds = bisection_rounds;
        return find_rho(c, opt);
      },
      py::arg("curve"), py::arg("outer_grid") = 256, py::arg("inner_grid") = 512,
      py::arg("bisection_rounds") = 45,
      "Largest grid-certified rho <= min(1, length) keeping chord/arc >= 1/2.");
  m.def(
      "curve_chord_target",
      [](const ParametricCurve& c, double rho, int scales, int probes_per_block,
         unsigned safety_bits, int grid_size) {
        CurveTargetOptions opt;
        opt.scales = scales;
        opt.probes_per_block = probes_per_block;
        opt.safety_bits = safety_bits;
        opt.grid_size = grid_size;
        return curve_chord_target(c, rho, opt);
      },
      py::arg("curve"), py::arg("rho"), py::arg("scales") = 16, py::arg("probes_per_block") = 4,
      py::arg("safety_bits") = 30, py::arg("grid_size") = 2048,
      "Density bound sampled from the curve's own chord/arc profile; sets "
      "synthesized against it keep every scan quotient below 1.");

  py::class_<ScalarArcFunction>(m, "ScalarArcFunction",
                                "Scalar function of the arc parameter on [0, rho].")
      .def_readonly("rho", &ScalarArcFunction::rho)
      .def_readonly("name", &ScalarArcFunction::name)
      .def("__call__", [](const ScalarArcFunction& f, double s) { return f.value(s); },
           py::arg("s"))
      .def("__repr__",
           [](const ScalarArcFunction& f) { return "ScalarArcFunction(" + f.name + ")"; });

  m.def("build_indicator_primitive", &build_indicator_primitive, py::arg("approx"),
        py::arg("curve"), py::arg("rho"),
        "rho * m(t/rho) with m the midpoint prefix measure: constant on gap images, "
        "slope 1 on the set.");
  m.def("build_penalized_primitive", &build_penalized_primitive, py::arg("approx"),
        py::arg("curve"), py::arg("rho"),
        "rho * ((9/8) m(t/rho) - (1/8)(t/rho)): slope exactly -1/8 on gap images.");
  m.def("distance_from_start", &distance_from_start, py::arg("curve"),
        "Distance to the start point; on a straight segment every pair attains "
        "quotient 1 (control case).");

  m.def(
      "attainment_scan",
      [](const ScalarArcFunction& fn, const ParametricCurve& curve, int coarse_grid,
         int refine_rounds, int top_k, double attain_tol, double min_separation) {
        ScanOptions opt;
        opt.coarse_grid = coarse_grid;
        opt.refine_rounds = refine_rounds;
        opt.top_k = top_k;
        opt.attain_tol = attain_tol;
        opt.min_separation = min_separation;
        return json_to_py(attainment_scan(fn, curve, opt).to_json());
      },
      py::arg("fn"), py::arg("curve"), py::arg("coarse_grid") = 400,
      py::arg("refine_rounds") = 6, py::arg("top_k") = 6, py::arg("attain_tol") = 1e-12,
      py::arg("min_separation") = 0.0,
      "Sweep of |f(t)-f(s)| / |pos(t)-pos(s)| with refinement around the best "
      "pairs; reports the sup estimate and whether it is attained.");
  m.def(
      "structural_pair_quotients",
      [](const ScalarArcFunction& fn, const ParametricCurve& curve,
         const CantorApproximation& approx, int n_max) {
        py::list out;
        for (const auto& s : structural_pair_quotients(fn, curve, approx, n_max))
          out.append(sample_to_python(s));
        return out;
      },
      py::arg("fn"), py::arg("curve"), py::arg("approx"), py::arg("n_max"),
      "Quotients at the pairs (0, rho * r_n): the sequence along which the scan's "
      "supremum is approached from below.");

  m.def(
      "levels_svg",
      [](const LambdaSequence& seq, int max_level) {
        std::ostringstream os;
        write_levels_svg(seq, max_level, os);
        return os.str();
      },
      py::arg("seq"), py::arg("max_level"),
      "SVG with one bar row per construction level, components filled.");
  m.def(
      "levels_csv",
      [](const LambdaSequence& seq, int max_level) {
        std::ostringstream os;
        write_levels_csv(seq, max_level, os);
        return os.str();
      },
      py::arg("seq"), py::arg("max_level"), "Exact component endpoints, one row per component.");
}
