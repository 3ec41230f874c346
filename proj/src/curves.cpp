#include "cantor/curves.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>

#include "cantor/density.hpp"
#include "cantor/errors.hpp"
#include "cantor/expression.hpp"
#include "cantor/json_util.hpp"

namespace cantor {

double vec_norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 vec_sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

namespace {

double speed_at(const ParametricCurve& c, double t) { return vec_norm(c.velocity(t)); }

// Adaptive Simpson with the usual 1/15 error update.
double simpson_slice(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double m,
                        double fm, double b, double fb, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_slice(a, fa, flm, m, fm);
  double right = simpson_slice(m, fm, frm, b, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson_slice(a, fa, fm, b, fb);
  return adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 40);
}

}  // namespace

double curve_length(const ParametricCurve& c, double tol) {
  if (!(tol > 0)) throw DomainError("quadrature tolerance must be positive");
  auto f = [&](double t) { return speed_at(c, t); };
  return integrate(f, c.t0, c.t1, tol);
}

double derivative_modulus(const ParametricCurve& c, int grid) {
  if (grid < 2) throw DomainError("derivative modulus needs at least two grid nodes");
  double h = c.domain_length() / grid;
  double worst = 0.0;
  Vec3 prev = c.velocity(c.t0);
  for (int i = 1; i <= grid; ++i) {
    Vec3 cur = c.velocity(c.t0 + i * h);
    worst = std::max(worst, vec_norm(vec_sub(cur, prev)));
    prev = cur;
  }
  return worst;
}

double max_speed_deviation(const ParametricCurve& c, int grid) {
  if (grid < 2) throw DomainError("speed validation needs at least two grid nodes");
  double h = c.domain_length() / grid;
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    worst = std::max(worst, std::fabs(speed_at(c, c.t0 + i * h) - 1.0));
  }
  return worst;
}

ParametricCurve arclength_reparametrize(const ParametricCurve& c, double tol) {
  if (!(tol > 0)) throw DomainError("reparametrization tolerance must be positive");
  if (!(c.t1 > c.t0)) throw DomainError("curve domain is empty");

  constexpr int kProbe = 1024;
  double span = c.domain_length();
  double h = span / kProbe;
  for (int i = 0; i <= kProbe; ++i) {
    if (speed_at(c, c.t0 + i * h) < 10.0 * tol) {
      throw DegenerateDerivative("speed vanishes (below 10*tol) near t = " +
                                 std::to_string(c.t0 + i * h));
    }
  }

  // Cumulative arc-length table on a uniform grid.
  constexpr int kTable = 2048;
  auto speed = [orig = c](double t) { return speed_at(orig, t); };
  auto cum = std::make_shared<std::vector<double>>(kTable + 1, 0.0);
  double dt = span / kTable;
  double seg_tol = tol / kTable;
  for (int i = 1; i <= kTable; ++i) {
    double a = c.t0 + (i - 1) * dt;
    (*cum)[i] = (*cum)[i - 1] + integrate(speed, a, a + dt, seg_tol);
  }
  double total = cum->back();

  auto invert = [cum, speed, t0 = c.t0, dt, total, seg_tol](double u) {
    u = std::clamp(u, 0.0, total);
    auto it = std::upper_bound(cum->begin(), cum->end(), u);
    std::size_t idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
        0, std::min<std::ptrdiff_t>(it - cum->begin() - 1,
                                    static_cast<std::ptrdiff_t>(cum->size()) - 2)));
    // Arc length is always measured from the table node `left`; the moving
    // bracket [lo, hi] only safeguards the Newton steps.
    double left = t0 + static_cast<double>(idx) * dt;
    double target = u - (*cum)[idx];
    double lo = left, hi = left + dt;
    double t = std::clamp(left + target / std::max(speed(left), 1e-300), lo, hi);
    for (int iter = 0; iter < 60; ++iter) {
      double err = integrate(speed, left, t, seg_tol) - target;
      if (std::fabs(err) <= 1e-15 * std::max(1.0, total)) break;
      if (err > 0) {
        hi = t;
      } else {
        lo = t;
      }
      double next = t - err / std::max(speed(t), 1e-300);
      if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
      if (std::fabs(next - t) <= 1e-17 * std::max(1.0, std::fabs(t))) {
        t = next;
        break;
      }
      t = next;
    }
    return t;
  };

  ParametricCurve out;
  out.dimension = c.dimension;
  out.t0 = 0.0;
  out.t1 = total;
  out.name = c.name;
  out.position = [orig = c, invert](double u) { return orig.position(invert(u)); };
  out.velocity = [orig = c, invert](double u) {
    Vec3 v = orig.velocity(invert(u));
    double n = vec_norm(v);
    return Vec3{v[0] / n, v[1] / n, v[2] / n};
  };
  out.arc_length_flag = true;

  if (max_speed_deviation(out, 1024) > 1e-8) {
    throw NumericalInconsistency("reparametrized curve failed the unit-speed validation");
  }
  // Positional cross-check: finite differences of the position must move at
  // unit rate, which exercises the inversion (the velocity closure alone is
  // normalized by construction).
  double fdh = std::max(1e-7, total * 1e-5);
  for (int i = 0; i <= 64; ++i) {
    double u = total * i / 64.0;
    double a = std::max(0.0, u - fdh), b = std::min(total, u + fdh);
    double fd = vec_norm(vec_sub(out.position(b), out.position(a))) / (b - a);
    if (std::fabs(fd - 1.0) > 1e-5) {
      throw NumericalInconsistency("arc-length inversion drifted: finite-difference speed " +
                                   std::to_string(fd) + " at u = " + std::to_string(u));
    }
  }
  return out;
}

namespace {

void require_unit_speed(const ParametricCurve& c, const char* op) {
  if (!c.arc_length_flag) {
    throw DomainError(std::string(op) + " needs an arc-length parametrized curve");
  }
}

double chord_over_arc(const ParametricCurve& c, double t, double x) {
  double r = vec_norm(vec_sub(c.position(t + x), c.position(t))) / x;
  if (r > 1.0 + 1e-6) {
    throw NumericalInconsistency("chord exceeds arc by more than 1e-6 at t = " +
                                 std::to_string(t) + ", x = " + std::to_string(x));
  }
  return r;
}

}  // namespace

double chord_ratio_inf(const ParametricCurve& c, double x, int grid_size) {
  require_unit_speed(c, "chord_ratio_inf");
  if (!(x > 0)) throw DomainError("chord length must be positive");
  if (x > c.domain_length() * (1.0 + 1e-12)) {
    throw DomainError("chord length exceeds the curve length");
  }
  if (grid_size < 1) throw DomainError("chord grid must be positive");
  x = std::min(x, c.domain_length());
  double lo = c.t0, hi = c.t1 - x;
  if (hi <= lo) return chord_over_arc(c, lo, x);

  double step = (hi - lo) / grid_size;
  double best = chord_over_arc(c, lo, x);
  double best_t = lo;
  for (int i = 1; i <= grid_size; ++i) {
    double t = lo + i * step;
    double r = chord_over_arc(c, t, x);
    if (r < best) {
      best = r;
      best_t = t;
    }
  }

  // Golden-section refinement on the bracket around the grid argmin.
  double a = std::max(lo, best_t - step), b = std::min(hi, best_t + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = chord_over_arc(c, c1, x), f2 = chord_over_arc(c, c2, x);
  for (int iter = 0; iter < 80 && (b - a) > 1e-15 * std::max(1.0, hi); ++iter) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = chord_over_arc(c, c1, x);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = chord_over_arc(c, c2, x);
    }
    best = std::min(best, std::min(f1, f2));
  }
  return best;
}

double find_rho(const ParametricCurve& c, const FindRhoOptions& opt) {
  require_unit_speed(c, "find_rho");
  if (opt.outer_grid < 2) throw DomainError("rho search needs at least two samples");
  double cap = std::min(1.0, c.domain_length());
  double good = 0.0;
  double bad = -1.0;
  for (int j = 1; j <= opt.outer_grid; ++j) {
    double x = cap * j / opt.outer_grid;
    if (chord_ratio_inf(c, x, opt.inner_grid) >= 0.5) {
      good = x;
    } else {
      bad = x;
      break;
    }
  }
  if (bad < 0) return cap;
  for (int iter = 0; iter < opt.bisection_rounds && bad - good > 1e-14; ++iter) {
    double mid = 0.5 * (good + bad);
    if (chord_ratio_inf(c, mid, opt.inner_grid) >= 0.5) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

ParametricCurve make_line(double length) {
  if (!(length > 0)) throw DomainError("line length must be positive");
  ParametricCurve c;
  c.dimension = 2;
  c.t0 = 0.0;
  c.t1 = length;
  c.position = [](double t) { return Vec3{t, 0.0, 0.0}; };
  c.velocity = [](double) { return Vec3{1.0, 0.0, 0.0}; };
  c.arc_length_flag = true;
  c.name = "line";
  return c;
}

ParametricCurve make_circle(double radius, double arc) {
  if (!(radius > 0)) throw DomainError("circle radius must be positive");
  if (arc < 0) arc = M_PI * radius;  // half turn by default
  if (!(arc > 0)) throw DomainError("circle arc must be positive");
  ParametricCurve c;
  c.dimension = 2;
  c.t0 = 0.0;
  c.t1 = arc;
  c.position = [radius](double t) {
    return Vec3{radius * std::cos(t / radius), radius * std::sin(t / radius), 0.0};
  };
  c.velocity = [radius](double t) {
    return Vec3{-std::sin(t / radius), std::cos(t / radius), 0.0};
  };
  c.arc_length_flag = true;
  c.name = "circle";
  return c;
}

ParametricCurve make_ellipse(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw DomainError("ellipse semi-axes must be positive");
  ParametricCurve c;
  c.dimension = 2;
  c.t0 = 0.0;
  c.t1 = 2.0 * M_PI;
  c.position = [a, b](double t) { return Vec3{a * std::cos(t), b * std::sin(t), 0.0}; };
  c.velocity = [a, b](double t) { return Vec3{-a * std::sin(t), b * std::cos(t), 0.0}; };
  c.arc_length_flag = false;
  c.name = "ellipse";
  return c;
}

ParametricCurve make_parabola(double span) {
  if (!(span > 0)) throw DomainError("parabola span must be positive");
  ParametricCurve c;
  c.dimension = 2;
  c.t0 = 0.0;
  c.t1 = span;
  c.position = [](double t) { return Vec3{t, 0.5 * t * t, 0.0}; };
  c.velocity = [](double t) { return Vec3{1.0, t, 0.0}; };
  c.arc_length_flag = false;
  c.name = "parabola";
  return c;
}

ParametricCurve make_spiral(double turns, double scale) {
  if (!(turns > 0) || !(scale > 0)) throw DomainError("spiral parameters must be positive");
  ParametricCurve c;
  c.dimension = 2;
  c.t0 = 0.0;
  c.t1 = 2.0 * M_PI * turns;
  c.position = [scale](double t) {
    return Vec3{scale * t * std::cos(t), scale * t * std::sin(t), 0.0};
  };
  c.velocity = [scale](double t) {
    return Vec3{scale * (std::cos(t) - t * std::sin(t)), scale * (std::sin(t) + t * std::cos(t)),
                0.0};
  };
  c.arc_length_flag = false;
  c.name = "spiral";
  return c;
}

ParametricCurve builtin_curve(const std::string& name,
                              const std::map<std::string, double>& params) {
  auto take = [spare = params](std::initializer_list<const char*> allowed) mutable {
    std::map<std::string, double> out;
    for (const char* key : allowed) {
      auto it = spare.find(key);
      if (it != spare.end()) {
        out[key] = it->second;
        spare.erase(it);
      }
    }
    if (!spare.empty()) {
      throw DomainError("unknown curve parameter: " + spare.begin()->first);
    }
    return out;
  };
  auto get = [](const std::map<std::string, double>& m, const char* key, double def) {
    auto it = m.find(key);
    return it == m.end() ? def : it->second;
  };
  if (name == "line") {
    auto p = take({"length"});
    return make_line(get(p, "length", 3.0));
  }
  if (name == "circle") {
    auto p = take({"radius", "arc"});
    return make_circle(get(p, "radius", 1.0), get(p, "arc", -1.0));
  }
  if (name == "ellipse") {
    auto p = take({"a", "b"});
    return make_ellipse(get(p, "a", 1.0), get(p, "b", 0.5));
  }
  if (name == "parabola") {
    auto p = take({"span"});
    return make_parabola(get(p, "span", 1.0));
  }
  if (name == "spiral") {
    auto p = take({"turns", "scale"});
    return make_spiral(get(p, "turns", 2.0), get(p, "scale", 0.15));
  }
  throw DomainError("unknown curve name: " + name +
                    " (have line, circle, ellipse, parabola, spiral)");
}

ParametricCurve curve_from_expressions(const std::vector<std::string>& coords, double t0,
                                       double t1, const std::string& name) {
  if (coords.empty() || coords.size() > 3) {
    throw DomainError("curves need 1 to 3 coordinate expressions");
  }
  if (!(t1 > t0)) throw DomainError("curve domain is empty");
  std::vector<ExprPtr> pos, vel;
  for (const auto& text : coords) {
    ExprPtr e = parse_expression(text, curve_dialect());
    vel.push_back(e->derivative());
    pos.push_back(std::move(e));
  }
  ParametricCurve c;
  c.dimension = static_cast<int>(coords.size());
  c.t0 = t0;
  c.t1 = t1;
  c.position = [pos](double t) {
    Vec3 p{0, 0, 0};
    for (std::size_t i = 0; i < pos.size(); ++i) p[i] = pos[i]->eval_double(t);
    return p;
  };
  c.velocity = [vel](double t) {
    Vec3 v{0, 0, 0};
    for (std::size_t i = 0; i < vel.size(); ++i) v[i] = vel[i]->eval_double(t);
    return v;
  };
  c.arc_length_flag = false;
  c.name = name;
  return c;
}

namespace {

ScalarArcFunction make_primitive(const CantorApproximation& approx, const ParametricCurve& curve,
                                 double rho, bool penalized) {
  require_unit_speed(curve, "primitive construction");
  if (!(rho > 0)) throw DomainError("rho must be positive");
  if (curve.domain_length() < rho * (1.0 - 1e-12)) {
    throw DomainError("curve shorter than rho: domain must contain [0, rho]");
  }
  auto shared = std::make_shared<CantorApproximation>(approx);
  Rational rho_rat = rational_from_double(rho);
  ScalarArcFunction f;
  f.rho = rho;
  f.name = penalized ? "penalized-primitive" : "indicator-primitive";
  f.value = [shared, rho, rho_rat, penalized](double t) {
    if (t < -1e-9 * rho || t > rho * (1.0 + 1e-9)) {
      throw DomainError("arc parameter outside [0, rho]");
    }
    t = std::clamp(t, 0.0, rho);
    Rational u = rational_from_double(t) / rho_rat;
    if (u > 1) u = 1;
    Enclosure m = prefix_measure_bounds(*shared, u);
    Rational mid = (m.lo + m.hi) / 2;
    Rational v = penalized ? (Rational(9) * mid - u) / 8 : mid;
    return rho * to_double(v);
  };
  return f;
}

}  // namespace

ScalarArcFunction build_indicator_primitive(const CantorApproximation& approx,
                                            const ParametricCurve& curve, double rho) {
  return make_primitive(approx, curve, rho, false);
}

ScalarArcFunction build_penalized_primitive(const CantorApproximation& approx,
                                            const ParametricCurve& curve, double rho) {
  return make_primitive(approx, curve, rho, true);
}

ScalarArcFunction distance_from_start(const ParametricCurve& c) {
  ScalarArcFunction f;
  f.rho = c.domain_length();
  f.name = "distance-from-start";
  f.value = [curve = c](double t) {
    return vec_norm(vec_sub(curve.position(curve.t0 + t), curve.position(curve.t0)));
  };
  return f;
}

namespace {

struct PairCandidate {
  double t = 0, s = 0;
  double quotient = -1.0;
};

LipschitzSample sample_of(const ScalarArcFunction& fn, const ParametricCurve& curve, double t,
                          double s) {
  LipschitzSample out;
  out.t = t;
  out.s = s;
  out.arc = std::fabs(t - s);
  out.chord = vec_norm(vec_sub(curve.position(curve.t0 + t), curve.position(curve.t0 + s)));
  if (out.chord > 0) {
    out.quotient = std::fabs(fn.value(t) - fn.value(s)) / out.chord;
  }
  return out;
}

}  // namespace

ScanResult attainment_scan(const ScalarArcFunction& fn, const ParametricCurve& curve,
                           const ScanOptions& opt) {
  if (opt.coarse_grid < 8) throw DomainError("scan grid too small");
  if (opt.refine_rounds < 1) throw DomainError("scan needs at least one refinement round");
  const double R = fn.rho;
  if (!(R > 0)) throw DomainError("scan domain is empty");
  const int G = opt.coarse_grid;

  std::vector<double> val(static_cast<std::size_t>(G) + 1);
  std::vector<Vec3> pt(static_cast<std::size_t>(G) + 1);
  for (int i = 0; i <= G; ++i) {
    double t = R * i / G;
    val[static_cast<std::size_t>(i)] = fn.value(t);
    pt[static_cast<std::size_t>(i)] = curve.position(curve.t0 + t);
  }

  ScanResult res;
  double cell = R / G;
  std::vector<PairCandidate> top;
  auto offer = [&](double t, double s, double q) {
    if (q > res.sup_estimate) res.sup_estimate = q;
    // Keep candidates apart: a near-duplicate only replaces a worse entry.
    for (auto& c : top) {
      if (std::fabs(c.t - t) < 2 * cell && std::fabs(c.s - s) < 2 * cell) {
        if (q > c.quotient) c = {t, s, q};
        return;
      }
    }
    top.push_back({t, s, q});
    if (static_cast<int>(top.size()) > opt.top_k) {
      top.erase(std::min_element(top.begin(), top.end(),
                                 [](const PairCandidate& a, const PairCandidate& b) {
                                   return a.quotient < b.quotient;
                                 }));
    }
  };

  // Pairs closer than min_separation along the arc are excluded everywhere:
  // below the resolution of fn they say nothing about the true quotient.
  const double sep_floor = opt.min_separation;

  for (int i = 0; i < G; ++i) {
    for (int j = i + 1; j <= G; ++j) {
      if (R * (j - i) / G < sep_floor) continue;
      double chord = vec_norm(vec_sub(pt[static_cast<std::size_t>(j)], pt[static_cast<std::size_t>(i)]));
      if (chord < 1e-14) {
        ++res.degenerate_pairs;
        continue;
      }
      double q = std::fabs(val[static_cast<std::size_t>(j)] - val[static_cast<std::size_t>(i)]) / chord;
      offer(R * i / G, R * j / G, q);
    }
  }

  // Local refinement: 7x7 pair grids shrinking by 3 around each candidate.
  double radius = cell;
  double before_last = res.sup_estimate;
  for (int round = 0; round < opt.refine_rounds; ++round) {
    before_last = res.sup_estimate;
    for (auto& cand : top) {
      PairCandidate improved = cand;
      for (int a = -3; a <= 3; ++a) {
        double t = std::clamp(cand.t + radius * a / 3.0, 0.0, R);
        double ft = fn.value(t);
        Vec3 p1 = curve.position(curve.t0 + t);
        for (int b = -3; b <= 3; ++b) {
          double s = std::clamp(cand.s + radius * b / 3.0, 0.0, R);
          if (std::fabs(s - t) < sep_floor) continue;
          double chord = vec_norm(vec_sub(curve.position(curve.t0 + s), p1));
          if (chord < 1e-14) {
            ++res.degenerate_pairs;
            continue;
          }
          double q = std::fabs(fn.value(s) - ft) / chord;
          if (q > improved.quotient) improved = {t, s, q};
        }
      }
      cand = improved;
      if (improved.quotient > res.sup_estimate) res.sup_estimate = improved.quotient;
    }
    radius /= 3.0;
  }
  res.last_improvement = res.sup_estimate - before_last;
  res.final_cell = radius;

  std::sort(top.begin(), top.end(), [](const PairCandidate& a, const PairCandidate& b) {
    return a.quotient > b.quotient;
  });
  for (const auto& cand : top) {
    if (cand.quotient < 0) continue;
    res.witnesses.push_back(sample_of(fn, curve, cand.t, cand.s));
  }

  // Sub-floor probe: quotients at pairs tighter than the working floor. When
  // these keep beating the estimate, the supremum lives in the collapsing-pair
  // limit and no witness attains it.
  const double attain_floor = sep_floor > 0 ? sep_floor : 2.0 * res.final_cell;
  res.floor_probe = res.sup_estimate;
  std::vector<double> anchors{0.0};
  for (const auto& cand : top) anchors.push_back(cand.t);
  for (double a : anchors) {
    double delta = attain_floor;
    for (int k = 0; k < 4; ++k) {
      delta /= 3.0;
      for (double s : {a + delta, a - delta}) {
        if (s < 0 || s > R) continue;
        LipschitzSample probe = sample_of(fn, curve, a, s);
        if (probe.chord < 1e-14) continue;
        res.floor_probe = std::max(res.floor_probe, probe.quotient);
      }
    }
  }

  res.attained = !res.witnesses.empty() && res.last_improvement <= opt.attain_tol &&
                 res.witnesses.front().quotient >= res.sup_estimate - opt.attain_tol &&
                 res.witnesses.front().arc >= attain_floor &&
                 res.floor_probe <= res.sup_estimate + opt.attain_tol;
  return res;
}

std::vector<LipschitzSample> structural_pair_quotients(const ScalarArcFunction& fn,
                                                       const ParametricCurve& curve,
                                                       const CantorApproximation& approx,
                                                       int n_max) {
  std::vector<LipschitzSample> out;
  int hi = std::min(n_max, approx.level());
  for (int n = 1; n <= hi; ++n) {
    double rn = to_double(approx.r()[static_cast<std::size_t>(n)]);
    out.push_back(sample_of(fn, curve, 0.0, fn.rho * rn));
  }
  return out;
}

nlohmann::json ScanResult::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& w : witnesses) {
    rows.push_back({{"t", w.t},
                    {"s", w.s},
                    {"arc", w.arc},
                    {"chord", w.chord},
                    {"quotient", w.quotient}});
  }
  return {{"sup_estimate", sup_estimate},
          {"attained", attained},
          {"final_cell", final_cell},
          {"last_improvement", last_improvement},
          {"floor_probe", floor_probe},
          {"degenerate_pairs", degenerate_pairs},
          {"witnesses", std::move(rows)}};
}

void write_scan_csv(const ScanResult& result, std::ostream& os) {
  os << "t,s,quotient,chord,arc\n";
  os.precision(17);
  for (const auto& w : result.witnesses) {
    os << w.t << ',' << w.s << ',' << w.quotient << ',' << w.chord << ',' << w.arc << '\n';
  }
}

TargetFunction curve_chord_target(const ParametricCurve& c, double rho,
                                  const CurveTargetOptions& opt) {
  if (opt.scales < 2 || opt.scales > 40) throw DomainError("scales outside 2..40");
  if (opt.probes_per_block < 1) throw DomainError("need at least one probe per block");
  if (opt.grid_size < 16) throw DomainError("grid too small for a trustworthy minimum");
  if (!(rho > 0)) throw DomainError("rho must be positive");
  if (rho > c.domain_length() * (1 + 1e-12)) throw DomainError("rho exceeds the curve domain");

  const Rational safety = pow2(-static_cast<long>(opt.safety_bits));
  std::vector<TablePoint> pts;
  for (int k = opt.scales - 1; k >= 0; --k) {  // ascending abscissas 2^-k
    const double x_hi = std::ldexp(1.0, -k);   // value covers the block (x_hi/2, x_hi]
    double ratio = 2.0;
    for (int j = 1; j <= opt.probes_per_block; ++j) {
      double x = x_hi * (0.5 + 0.5 * j / opt.probes_per_block);
      ratio = std::min(ratio, chord_ratio_inf(c, rho * x, opt.grid_size));
    }
    Rational v = floor_dyadic(rational_from_double(ratio) - safety, 40);
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    pts.push_back({pow2(-k), Enclosure(v, v)});
  }
  const Rational x1 = pts.front().x;
  const Rational v1 = pts.front().value.lo;
  Rational coeff = 2 * (1 - v1) / (x1 * x1);
  return TargetFunction::tabulated_with_quadratic_tail(std::move(pts), coeff);
}

}  // namespace cantor
