#pragma once

#include <json.hpp>

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cantor/construction.hpp"
#include "cantor/target.hpp"

namespace cantor {

// Curve points live in R^3; planar curves keep the trailing coordinate 0.
using Vec3 = std::array<double, 3>;

double vec_norm(const Vec3& v);
Vec3 vec_sub(const Vec3& a, const Vec3& b);

struct ParametricCurve {
  int dimension = 2;
  double t0 = 0.0;
  double t1 = 1.0;
  std::function<Vec3(double)> position;
  std::function<Vec3(double)> velocity;
  // Set when the parametrization is certified unit-speed (on a sampling grid,
  // see max_speed_deviation); the chord/arc operations below require it.
  bool arc_length_flag = false;
  std::string name;

  double domain_length() const { return t1 - t0; }
};

// Total length by adaptive Simpson quadrature of the speed.
double curve_length(const ParametricCurve& c, double tol = 1e-10);

// Largest velocity difference between adjacent nodes of a uniform grid: a
// sampled modulus of continuity for the derivative.
double derivative_modulus(const ParametricCurve& c, int grid = 1024);

// Largest deviation of the speed from 1 over a uniform grid.
double max_speed_deviation(const ParametricCurve& c, int grid = 1024);

// Unit-speed reparametrization onto [0, length]: cumulative Simpson table,
// inversion by bracketed Newton, velocity renormalized. Throws
// DegenerateDerivative if the speed drops below 10*tol on the probe grid and
// NumericalInconsistency if the result fails its own speed validation.
ParametricCurve arclength_reparametrize(const ParametricCurve& c, double tol = 1e-10);

// inf over t of |pos(t+x) - pos(t)| / x for a unit-speed curve: uniform grid
// minimum refined by golden-section search around the argmin. Chords are
// checked against the arc bound; exceeding it by more than 1e-6 throws
// NumericalInconsistency.
double chord_ratio_inf(const ParametricCurve& c, double x, int grid_size = 2048);

struct FindRhoOptions {
  int outer_grid = 256;  // samples of x in (0, min(1, length)]
  int inner_grid = 512;  // grid handed to chord_ratio_inf
  int bisection_rounds = 45;
};

// Largest grid-certified rho <= min(1, length) such that the chord/arc ratio
// stays >= 1/2 at every sampled x <= rho. A dip below 1/2 is localized by
// bisection; without one the cap is returned.
double find_rho(const ParametricCurve& c, const FindRhoOptions& opt = {});

// Built-in curves. Circle and line come out unit-speed already; the others
// need arclength_reparametrize before the chord operations.
ParametricCurve make_line(double length = 3.0);
ParametricCurve make_circle(double radius = 1.0, double arc = -1.0);  // arc < 0: half turn
ParametricCurve make_ellipse(double a = 1.0, double b = 0.5);
ParametricCurve make_parabola(double span = 1.0);
ParametricCurve make_spiral(double turns = 2.0, double scale = 0.15);
ParametricCurve builtin_curve(const std::string& name,
                              const std::map<std::string, double>& params = {});

// Curve with per-coordinate expressions in t (dialect: + - * / and integer ^);
// velocities come from the symbolic derivative. 1 to 3 coordinates.
ParametricCurve curve_from_expressions(const std::vector<std::string>& coords, double t0,
                                       double t1, const std::string& name = "custom");

// ---------------------------------------------------------------------------
// Scalar functions along a unit-speed curve. `value` takes the arc parameter
// measured from the curve's start and is defined on [0, rho].
struct ScalarArcFunction {
  std::function<double(double)> value;
  double rho = 0.0;
  std::string name;
};

// f(t) = rho * m(t/rho) with m the midpoint prefix measure of the
// approximation: the primitive of the set indicator carried onto the curve,
// with the unit interval mapped affinely onto [0, rho]. Constant on gap
// images; evaluation error is bounded by the enclosure width.
ScalarArcFunction build_indicator_primitive(const CantorApproximation& approx,
                                            const ParametricCurve& curve, double rho);

// f(t) = rho * ((9/8) m(t/rho) - (1/8)(t/rho)): primitive of the indicator
// minus 1/8 on the complement. Decreases at slope exactly -1/8 on gap images.
ScalarArcFunction build_penalized_primitive(const CantorApproximation& approx,
                                            const ParametricCurve& curve, double rho);

// Distance to the starting point. On a straight segment every pair realizes
// quotient 1, so scans report attainment; a control case.
ScalarArcFunction distance_from_start(const ParametricCurve& c);

struct LipschitzSample {
  double t = 0;
  double s = 0;
  double arc = 0;       // |t - s|
  double chord = 0;     // |pos(t) - pos(s)|, positive
  double quotient = 0;  // |f(t) - f(s)| / chord
};

struct ScanOptions {
  int coarse_grid = 400;
  int refine_rounds = 6;
  int top_k = 6;
  double attain_tol = 1e-12;
  // Pairs closer than this along the arc are ignored by the whole scan: below
  // the resolution of the function being scanned, quotients are meaningless.
  // For the primitives above a sound choice is a few multiples of
  // rho * r_level. 0 disables the filter during the scan and the attainment
  // decision falls back to two final grid cells of separation.
  double min_separation = 0.0;
};

struct ScanResult {
  double sup_estimate = 0.0;
  bool attained = false;
  std::vector<LipschitzSample> witnesses;  // best first
  double final_cell = 0.0;
  double last_improvement = 0.0;
  double floor_probe = 0.0;   // best quotient seen below the separation floor
  long degenerate_pairs = 0;  // skipped pairs with vanishing chord
  nlohmann::json to_json() const;
};

// Sweeps the quotients |f(t)-f(s)| / |pos(t)-pos(s)| over a coarse pair grid
// on [0, f.rho], then refines around the best pairs with shrinking local
// grids. `attained` is reported only when the last refinement round stopped
// improving the estimate (within attain_tol), the best witness pair stays
// separated, and probe pairs tighter than the separation floor do not beat
// the estimate; a supremum that is only approached as the pair collapses
// keeps improving under one of those lenses and reports false.
ScanResult attainment_scan(const ScalarArcFunction& fn, const ParametricCurve& curve,
                           const ScanOptions& opt = {});

// Quotients at the pairs (0, rho * r_n), n = 1..n_max: the sequence along
// which the scan's supremum is approached from below.
std::vector<LipschitzSample> structural_pair_quotients(const ScalarArcFunction& fn,
                                                       const ParametricCurve& curve,
                                                       const CantorApproximation& approx,
                                                       int n_max);

// CSV rows "t,s,quotient,chord,arc", witnesses in order.
void write_scan_csv(const ScanResult& result, std::ostream& os);

// ---------------------------------------------------------------------------
// From a curve to a density bound. Samples the chord/arc profile
// x -> inf ratio at arc separation rho * x over dyadic blocks of x, takes the
// minimum over several probe separations per block, nudges it down by
// 2^-safety_bits and rounds onto a dyadic grid. The resulting step function
// (with a quadratic continuation below the deepest abscissa) lies below the
// true profile wherever the profile does not dip inside a block below the
// probed values; the probes guard against moderate non-monotonicity, and the
// factor-two slack in the quadratic coefficient covers curvature-bounded
// curves. A set synthesized against this target keeps every scan quotient of
// its primitives strictly below 1.
struct CurveTargetOptions {
  int scales = 16;            // dyadic blocks down to 2^-scales+... abscissa 2^-(scales-1)
  int probes_per_block = 4;   // separation probes per block, minimum taken
  unsigned safety_bits = 30;  // downward nudge before dyadic rounding
  int grid_size = 2048;       // positional grid for each ratio evaluation
};

TargetFunction curve_chord_target(const ParametricCurve& c, double rho,
                                  const CurveTargetOptions& opt = {});

}  // namespace cantor
