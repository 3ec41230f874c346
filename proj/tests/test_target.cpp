#include <doctest.h>

#include "cantor/errors.hpp"
#include "cantor/target.hpp"

using namespace cantor;

TEST_CASE("expression parsing and exact evaluation") {
  auto f = TargetFunction::expression("max(1/2, 1 - sqrt(x))");
  // sqrt(1/4) is exact, so the result is a point.
  Enclosure at_quarter = f.eval(Rational(1, 4), 64);
  CHECK(at_quarter.is_point());
  CHECK(at_quarter.lo == Rational(1, 2));
  // At 1/16 the value is 1 - 1/4 = 3/4.
  CHECK(f.eval(Rational(1, 16), 64).lo == Rational(3, 4));
  // At 1/2 the value 1 - sqrt(1/2) = 0.29289... loses to the 1/2 floor.
  Enclosure at_half = f.eval(Rational(1, 2), 64);
  CHECK(at_half.lo == Rational(1, 2));
  CHECK(at_half.hi == Rational(1, 2));
  // Whole-range evaluation stays inside [1/2, 1].
  Enclosure range = f.eval_range(Rational(0), Rational(1), 64);
  CHECK(range.lo >= Rational(1, 2));
  CHECK(range.hi <= Rational(1));
}

TEST_CASE("expression evaluation clamps into the unit interval") {
  auto f = TargetFunction::expression("2 - x");
  CHECK(f.eval(Rational(1, 2), 64).hi == Rational(1));
  auto g = TargetFunction::expression("0 - x");
  CHECK(g.eval(Rational(1, 2), 64).lo == Rational(0));
}

TEST_CASE("expression parse errors") {
  CHECK_THROWS_AS(TargetFunction::expression(""), ParseError);
  CHECK_THROWS_AS(TargetFunction::expression("1 +"), ParseError);
  CHECK_THROWS_AS(TargetFunction::expression("foo(x)"), ParseError);
  CHECK_THROWS_AS(TargetFunction::expression("min(x)"), ParseError);
  CHECK_THROWS_AS(TargetFunction::expression("x ^ 2"), ParseError);  // no powers here
  CHECK_THROWS_AS(TargetFunction::expression("(x"), ParseError);
  CHECK_THROWS_AS(TargetFunction::expression("y"), ParseError);
}

TEST_CASE("division by an interval containing zero raises DomainError") {
  auto f = TargetFunction::expression("1 / (x - 1/2)");
  CHECK_THROWS_AS(f.eval_range(Rational(1, 4), Rational(3, 4), 64), DomainError);
  CHECK_NOTHROW(f.eval(Rational(3, 4), 64));
}

TEST_CASE("evaluation domain is (0, 1]") {
  auto f = TargetFunction::expression("1 - x");
  CHECK_THROWS_AS(f.eval(Rational(0), 64), DomainError);
  CHECK_THROWS_AS(f.eval(Rational(2), 64), DomainError);
  CHECK_NOTHROW(f.eval(Rational(1), 64));
}

TEST_CASE("tabulated step semantics take the next table value upward") {
  std::vector<TablePoint> pts = {
      {Rational(1, 4), Enclosure(Rational(9, 10))},
      {Rational(1, 2), Enclosure(Rational(7, 10))},
      {Rational(1), Enclosure(Rational(1, 2))},
  };
  auto f = TargetFunction::tabulated(pts, true);
  CHECK(f.non_increasing());
  // Below and at the first abscissa: its value.
  CHECK(f.eval(Rational(1, 8), 64).lo == Rational(9, 10));
  CHECK(f.eval(Rational(1, 4), 64).lo == Rational(9, 10));
  // Between points: the value of the next abscissa up.
  CHECK(f.eval(Rational(3, 8), 64).lo == Rational(7, 10));
  CHECK(f.eval(Rational(3, 4), 64).lo == Rational(1, 2));
  CHECK(f.eval(Rational(1), 64).lo == Rational(1, 2));
  // Range evaluation hulls the touched cells.
  Enclosure r = f.eval_range(Rational(3, 8), Rational(3, 4), 64);
  CHECK(r.lo == Rational(1, 2));
  CHECK(r.hi == Rational(7, 10));
}

TEST_CASE("tabulated validation") {
  CHECK_THROWS_AS(TargetFunction::tabulated({}, false), DomainError);
  CHECK_THROWS_AS(TargetFunction::tabulated({{Rational(0), Enclosure(Rational(1, 2))}}, false),
                  DomainError);
  CHECK_THROWS_AS(TargetFunction::tabulated({{Rational(1, 2), Enclosure(Rational(1, 2))},
                                             {Rational(1, 4), Enclosure(Rational(3, 4))}},
                                            false),
                  DomainError);
  // Certainly-increasing values contradict the non_increasing claim.
  CHECK_THROWS_AS(TargetFunction::tabulated({{Rational(1, 4), Enclosure(Rational(1, 2))},
                                             {Rational(1, 2), Enclosure(Rational(3, 4))}},
                                            true),
                  DomainError);
}

TEST_CASE("quadratic tail continues the table toward one at zero") {
  std::vector<TablePoint> pts = {
      {Rational(1, 32), Enclosure(Rational(9, 10))},
      {Rational(1), Enclosure(Rational(1, 2))},
  };
  auto f = TargetFunction::tabulated_with_quadratic_tail(pts, Rational(64));
  // Below x1 = 1/32: max(9/10, 1 - 64 x^2); at x = 1/64 the quadratic gives
  // 1 - 64/4096 = 1 - 1/64 = 63/64 > 9/10.
  Enclosure deep = f.eval(Rational(1, 64), 64);
  CHECK(deep.lo == Rational(63, 64));
  CHECK(deep.is_point());
  // At x = 1/32 exactly the table value rules.
  CHECK(f.eval(Rational(1, 32), 64).lo == Rational(9, 10));
  // Very deep the quadratic pushes toward 1.
  CHECK(f.eval(pow2(-20), 64).lo > Rational(99, 100));
  // Range across the boundary covers both regimes.
  Enclosure r = f.eval_range(pow2(-10), Rational(1, 16), 64);
  CHECK(r.hi >= Rational(63, 64));
  CHECK(r.lo <= Rational(9, 10));
  CHECK_THROWS_AS(TargetFunction::tabulated_with_quadratic_tail(pts, Rational(-1)), DomainError);
}

TEST_CASE("decreasing envelope of a monotone bound tracks the bound") {
  // g(x) = 1 - x + (1/4) x (1 - x) is non-increasing on [0,1] even though it
  // looks like it might rebound; its envelope at grid points equals g there.
  auto g = TargetFunction::expression("1 - x + (1/4) * x * (1 - x)");
  std::vector<Rational> grid;
  for (int k = 10; k >= 0; --k) grid.push_back(pow2(-k));
  auto h = decreasing_envelope(g, grid);
  CHECK(h.non_increasing());
  for (const Rational& p : grid) {
    Enclosure hv = h.eval(p, 64);
    Enclosure gv = g.eval(p, 64);
    // h <= g always; at grid points of a non-increasing g they agree closely.
    CHECK(hv.hi <= gv.hi);
    CHECK(hv.hi >= gv.lo);
  }
  // Envelope enclosures actually bracket the true infimum = g itself here.
  Enclosure mid = h.eval(Rational(3, 4), 64);
  Enclosure gmid = g.eval(Rational(3, 4), 64);
  CHECK(mid.lo <= gmid.lo);
  CHECK(mid.hi >= gmid.lo);
}

TEST_CASE("decreasing envelope flattens a genuinely rebounding bound") {
  // g(x) = 1 - x + (3/4) x^2 dips to 2/3 at x = 2/3 and rebounds to 3/4 at 1.
  auto g = TargetFunction::expression("1 - x + (3/4) * x * x");
  std::vector<Rational> grid;
  for (int k = 0; k <= 48; ++k) grid.push_back(Rational(k + 1, 49));
  auto h = decreasing_envelope(g, grid);
  // Past the dip the envelope stays near 2/3 while g rebounds.
  Enclosure at_dip = h.eval(Rational(2, 3), 64);
  Enclosure at_one = h.eval(Rational(1), 64);
  CHECK(at_one.hi < Rational(7, 10));          // well below g(1) = 3/4
  CHECK(at_one.hi >= at_dip.lo - Rational(1, 100));
  CHECK(at_one.lo <= Rational(2, 3));
  CHECK(at_one.hi >= Rational(2, 3) - Rational(1, 20));
  // Monotone: evaluations never increase along the grid.
  Rational prev_hi(2);
  for (const Rational& p : grid) {
    Enclosure hv = h.eval(p, 64);
    CHECK(hv.hi <= prev_hi + Rational(1, 1000000));
    prev_hi = hv.hi;
  }
}

TEST_CASE("envelope grid validation") {
  auto g = TargetFunction::expression("1 - x");
  CHECK_THROWS_AS(decreasing_envelope(g, {}), DomainError);
  CHECK_THROWS_AS(decreasing_envelope(g, {Rational(0)}), DomainError);
  CHECK_THROWS_AS(decreasing_envelope(g, {Rational(1, 2), Rational(1, 4)}), DomainError);
  CHECK_NOTHROW(decreasing_envelope(g, {Rational(1, 2)}));
}

TEST_CASE("target JSON round trips") {
  auto f = TargetFunction::expression("max(1/2, 1 - sqrt(x))");
  auto doc = f.to_json();
  CHECK(doc.contains("expression"));
  auto back = TargetFunction::from_json(doc);
  CHECK(back.eval(Rational(1, 4), 64).lo == Rational(1, 2));

  std::vector<TablePoint> pts = {
      {Rational(1, 2), Enclosure(Rational(2, 3), Rational(3, 4))},
      {Rational(1), Enclosure(Rational(1, 2))},
  };
  auto t = TargetFunction::tabulated_with_quadratic_tail(pts, Rational(7, 5));
  auto tdoc = t.to_json();
  auto tback = TargetFunction::from_json(tdoc);
  Enclosure v = tback.eval(Rational(3, 4), 64);
  CHECK(v.lo == Rational(1, 2));
  Enclosure deep = tback.eval(Rational(1, 10), 64);
  CHECK(deep.hi >= 1 - Rational(7, 5) / 100);

  CHECK_THROWS_AS(TargetFunction::from_json(nlohmann::json::object()), ParseError);
}
