#include <doctest.h>

#include <cmath>

#include "cantor/curves.hpp"
#include "cantor/errors.hpp"

using namespace cantor;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("straight line is its own arc-length parametrization") {
  auto line = make_line(3.0);
  CHECK(line.arc_length_flag);
  CHECK(line.domain_length() == doctest::Approx(3.0));
  CHECK(max_speed_deviation(line) == 0.0);
  CHECK(derivative_modulus(line) == 0.0);
  CHECK(curve_length(line) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("unit circle arc: length, speed, and derivative modulus") {
  auto c = make_circle();  // radius 1, half turn
  CHECK(c.domain_length() == doctest::Approx(kPi));
  CHECK(max_speed_deviation(c) < 1e-13);
  CHECK(curve_length(c) == doctest::Approx(kPi).epsilon(1e-11));
  // Adjacent velocity gap on a 1024 grid is 2 sin(h/2) with h = pi/1024.
  double h = kPi / 1024;
  CHECK(derivative_modulus(c) == doctest::Approx(2 * std::sin(h / 2)).epsilon(1e-10));
}

TEST_CASE("linear rescaling: alpha(t) = (2t, 0) reparametrizes to (u, 0) on [0, 2]") {
  ParametricCurve c;
  c.dimension = 2;
  c.t0 = 0;
  c.t1 = 1;
  c.position = [](double t) { return Vec3{2 * t, 0, 0}; };
  c.velocity = [](double) { return Vec3{2, 0, 0}; };
  c.name = "double-speed line";
  auto u = arclength_reparametrize(c);
  CHECK(u.arc_length_flag);
  CHECK(u.t0 == 0.0);
  CHECK(u.t1 == doctest::Approx(2.0).epsilon(1e-12));
  for (double s : {0.0, 0.5, 1.0, 1.7, 2.0}) {
    CHECK(u.position(s)[0] == doctest::Approx(s).epsilon(1e-10));
    CHECK(u.position(s)[1] == 0.0);
  }
}

TEST_CASE("parabola arc length matches the closed form") {
  auto p = make_parabola();
  // (sqrt(2) + asinh 1)/2
  const double ref = 1.14779357469631903701714902459;
  CHECK(curve_length(p) == doctest::Approx(ref).epsilon(1e-10));
  auto u = arclength_reparametrize(p);
  CHECK(u.t1 == doctest::Approx(ref).epsilon(1e-9));
  CHECK(max_speed_deviation(u) < 1e-8);
  // Endpoint carried over.
  CHECK(u.position(u.t1)[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(u.position(u.t1)[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("already unit-speed circle survives reparametrization as the identity") {
  auto c = make_circle();
  auto u = arclength_reparametrize(c);
  CHECK(u.t1 == doctest::Approx(kPi).epsilon(1e-11));
  for (double s : {0.0, 0.3, 1.5, 3.0}) {
    CHECK(u.position(s)[0] == doctest::Approx(std::cos(s)).epsilon(1e-9));
    CHECK(u.position(s)[1] == doctest::Approx(std::sin(s)).epsilon(1e-9));
  }
}

TEST_CASE("degenerate speed is rejected") {
  ParametricCurve c;
  c.t0 = 0;
  c.t1 = 1;
  // Speed vanishes at t = 1/2.
  c.position = [](double t) {
    double u = t - 0.5;
    return Vec3{u * u * u / 3, 0, 0};
  };
  c.velocity = [](double t) {
    double u = t - 0.5;
    return Vec3{u * u, 0, 0};
  };
  CHECK_THROWS_AS(arclength_reparametrize(c), DegenerateDerivative);
}

TEST_CASE("chord ratios of the unit circle match 2 sin(x/2)/x") {
  auto c = make_circle();
  struct Row {
    double x, ref;
  };
  const Row rows[] = {
      {kPi / 2, 0.900316316157106069555199191007},
      {0.1, 0.999583385413566575897300016910},
      {0.01, 0.999995833338541663566469330426},
      {0.001, 0.999999958333333854166663566468},
  };
  for (const auto& row : rows) {
    CHECK(chord_ratio_inf(c, row.x, 512) == doctest::Approx(row.ref).epsilon(1e-9));
  }
  // Ratios increase toward 1 as x shrinks.
  CHECK(chord_ratio_inf(c, 0.1, 256) < chord_ratio_inf(c, 0.01, 256));
  CHECK(chord_ratio_inf(c, 0.01, 256) < chord_ratio_inf(c, 0.001, 256));
}

TEST_CASE("chord ratio argument validation") {
  auto c = make_circle();
  CHECK_THROWS_AS(chord_ratio_inf(c, 0.0, 64), DomainError);
  CHECK_THROWS_AS(chord_ratio_inf(c, 4.0, 64), DomainError);
  auto e = make_ellipse();
  CHECK_THROWS_AS(chord_ratio_inf(e, 0.5, 64), DomainError);  // not unit speed
}

TEST_CASE("line chord ratio is exactly 1 and rho caps at 1") {
  auto line = make_line(3.0);
  CHECK(chord_ratio_inf(line, 0.7, 128) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(chord_ratio_inf(line, 2.9, 128) == doctest::Approx(1.0).epsilon(1e-14));
  FindRhoOptions opt;
  opt.outer_grid = 32;
  opt.inner_grid = 64;
  CHECK(find_rho(line, opt) == doctest::Approx(1.0));
}

TEST_CASE("unit circle rho caps at 1 because the ratio stays high") {
  auto c = make_circle();
  FindRhoOptions opt;
  opt.outer_grid = 32;
  opt.inner_grid = 128;
  CHECK(find_rho(c, opt) == doctest::Approx(1.0));
}

TEST_CASE("small circle dips below ratio 1/2 where sin(u)/u does") {
  // Circumference 1/2, radius 1/(4 pi). The ratio at arc x is sin(u)/u with
  // u = 2 pi x, which crosses 1/2 at u = 1.89549426703398...; the dip is at
  // x = 0.301677282200807... inside the rho <= 1/2 cap.
  auto c = make_circle(1.0 / (4 * kPi), 0.5);
  FindRhoOptions opt;
  opt.outer_grid = 64;
  opt.inner_grid = 64;
  double rho = find_rho(c, opt);
  CHECK(rho == doctest::Approx(0.301677282200807098822876921696).epsilon(1e-9));
  CHECK(chord_ratio_inf(c, rho, 64) >= 0.5);
  CHECK(chord_ratio_inf(c, rho * 1.01, 64) < 0.5);
}

TEST_CASE("ellipse: perimeter, vertex chord ratios, and capped rho") {
  auto raw = make_ellipse();  // a = 1, b = 1/2
  const double perimeter = 4.84422411027383809921425159820;
  CHECK(curve_length(raw) == doctest::Approx(perimeter).epsilon(1e-9));
  auto e = arclength_reparametrize(raw);
  CHECK(e.t1 == doctest::Approx(perimeter).epsilon(1e-8));
  CHECK(max_speed_deviation(e) < 1e-8);
  // Chord centered at the high-curvature vertex is the minimizer.
  CHECK(chord_ratio_inf(e, 1.0, 256) == doctest::Approx(0.722198314479912808).epsilon(1e-6));
  CHECK(chord_ratio_inf(e, 0.5, 256) == doctest::Approx(0.883403586011937918).epsilon(1e-6));
  FindRhoOptions opt;
  opt.outer_grid = 24;
  opt.inner_grid = 96;
  CHECK(find_rho(e, opt) == doctest::Approx(1.0));
}

TEST_CASE("spiral reparametrizes cleanly") {
  auto s = arclength_reparametrize(make_spiral(1.0, 0.2));
  CHECK(s.arc_length_flag);
  CHECK(max_speed_deviation(s) < 1e-8);
  CHECK(s.t1 == doctest::Approx(curve_length(make_spiral(1.0, 0.2))).epsilon(1e-8));
}

TEST_CASE("builtin curve lookup with parameters") {
  auto c = builtin_curve("circle", {{"radius", 2.0}, {"arc", 1.0}});
  CHECK(c.domain_length() == doctest::Approx(1.0));
  CHECK(vec_norm(c.position(0.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(builtin_curve("klein-bottle"), DomainError);
  CHECK_THROWS_AS(builtin_curve("circle", {{"bogus", 1.0}}), DomainError);
}

TEST_CASE("expression curves differentiate their coordinates") {
  auto c = curve_from_expressions({"t", "t^2/2"}, 0.0, 1.0, "poly-parabola");
  CHECK(c.dimension == 2);
  CHECK(c.position(0.5)[1] == doctest::Approx(0.125));
  CHECK(c.velocity(0.5)[0] == doctest::Approx(1.0));
  CHECK(c.velocity(0.5)[1] == doctest::Approx(0.5));
  // Matches the builtin parabola's length.
  CHECK(curve_length(c) == doctest::Approx(1.14779357469631903701714902459).epsilon(1e-10));
  CHECK_THROWS_AS(curve_from_expressions({}, 0, 1), DomainError);
  CHECK_THROWS_AS(curve_from_expressions({"x"}, 0, 1), ParseError);
}
