#include "cantor/target.hpp"

#include <algorithm>

#include "cantor/errors.hpp"
#include "cantor/json_util.hpp"

namespace cantor {

namespace {

Rational clamp_unit(const Rational& v) {
  if (v < 0) return Rational(0);
  if (v > 1) return Rational(1);
  return v;
}

Enclosure clamp_unit(const Enclosure& e) {
  return Enclosure(clamp_unit(e.lo), clamp_unit(e.hi));
}

void validate_points(const std::vector<TablePoint>& pts) {
  if (pts.empty()) throw DomainError("tabulated target needs at least one point");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].x <= 0 || pts[i].x > 1) {
      throw DomainError("table abscissas must lie in (0, 1]");
    }
    if (i > 0 && pts[i].x <= pts[i - 1].x) {
      throw DomainError("table abscissas must be strictly increasing");
    }
  }
}

}  // namespace

TargetFunction TargetFunction::expression(const std::string& text) {
  TargetFunction f;
  f.kind_ = Kind::Expression;
  f.source_ = text;
  f.expr_ = parse_expression(text, bound_dialect());
  return f;
}

TargetFunction TargetFunction::tabulated(std::vector<TablePoint> points, bool non_increasing) {
  validate_points(points);
  TargetFunction f;
  f.kind_ = Kind::Tabulated;
  f.source_ = "table[" + std::to_string(points.size()) + "]";
  for (auto& p : points) p.value = clamp_unit(p.value);
  if (non_increasing) {
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].value.lo > points[i - 1].value.hi) {
        throw DomainError("table claims non-increasing but values certainly increase");
      }
    }
  }
  f.points_ = std::move(points);
  f.non_increasing_ = non_increasing;
  return f;
}

TargetFunction TargetFunction::tabulated_with_quadratic_tail(std::vector<TablePoint> points,
                                                             const Rational& coeff) {
  if (coeff < 0) throw DomainError("quadratic tail coefficient must be non-negative");
  TargetFunction f = tabulated(std::move(points), true);
  f.quad_coeff_ = coeff;
  f.source_ += "+quad_tail";
  return f;
}

// Enclosure of max(v1, 1 - coeff x^2) over x in [a, b], 0 <= a <= b <= x1.
// The quadratic piece is exact rational arithmetic and decreasing in x.
static Enclosure quad_tail_range(const Enclosure& v1, const Rational& coeff, const Rational& a,
                                 const Rational& b) {
  Enclosure quad(1 - coeff * b * b, 1 - coeff * a * a);
  return Enclosure(std::max(v1.lo, quad.lo), std::max(v1.hi, quad.hi));
}

Enclosure TargetFunction::eval(const Rational& x, unsigned bits) const {
  if (x <= 0 || x > 1) throw DomainError("target evaluated outside (0, 1]");
  switch (kind_) {
    case Kind::Expression:
      return clamp_unit(expr_->eval(Enclosure(x), bits));
    case Kind::Tabulated: {
      if (quad_coeff_ >= 0 && x < points_.front().x) {
        return clamp_unit(quad_tail_range(points_.front().value, quad_coeff_, x, x));
      }
      auto it = std::lower_bound(points_.begin(), points_.end(), x,
                                 [](const TablePoint& p, const Rational& v) { return p.x < v; });
      if (it == points_.end()) return points_.back().value;
      return it->value;
    }
    case Kind::Envelope: {
      Rational hi = base_->eval(x, bits).hi;
      Rational lo;
      bool have_lo = false;
      Rational segment_start(0);
      auto account = [&](const Rational& a, const Rational& b) {
        if (a >= b) return;
        Rational seg_lo;
        try {
          seg_lo = base_->eval_range(a, b, bits).lo;
        } catch (const DomainError&) {
          seg_lo = 0;  // range evaluation failed near 0: fall back to the trivial bound
        }
        if (!have_lo || seg_lo < lo) {
          lo = seg_lo;
          have_lo = true;
        }
      };
      for (const Rational& p : grid_) {
        if (p > x) break;
        hi = std::min(hi, base_->eval(p, bits).hi);
        account(segment_start, p);
        segment_start = p;
      }
      account(segment_start, x);
      if (!have_lo) lo = 0;
      lo = std::min(lo, hi);
      return clamp_unit(Enclosure(lo, hi));
    }
  }
  throw DomainError("unreachable target kind");
}

Enclosure TargetFunction::eval_range(const Rational& a, const Rational& b, unsigned bits) const {
  if (a > b) throw DomainError("empty range");
  if (b <= 0 || b > 1) throw DomainError("target range outside (0, 1]");
  Rational lo_arg = a < 0 ? Rational(0) : a;
  switch (kind_) {
    case Kind::Expression:
      return clamp_unit(expr_->eval(Enclosure(lo_arg, b), bits));
    case Kind::Tabulated: {
      bool have = false;
      Enclosure out;
      auto merge = [&](const Enclosure& e) {
        out = have ? hull(out, e) : e;
        have = true;
      };
      if (lo_arg < points_.front().x) {
        Rational tail_end = std::min(b, points_.front().x);
        if (quad_coeff_ >= 0) {
          merge(clamp_unit(quad_tail_range(points_.front().value, quad_coeff_, lo_arg, tail_end)));
        } else {
          merge(points_.front().value);
        }
      }
      auto first = std::lower_bound(points_.begin(), points_.end(), lo_arg,
                                    [](const TablePoint& p, const Rational& v) { return p.x < v; });
      for (auto it = first; it != points_.end(); ++it) {
        // The cell ending at it->x intersects [a, b] iff its abscissa is not
        // beyond b or it is the first cell at or after b.
        merge(it->value);
        if (it->x >= b) break;
      }
      if (b > points_.back().x) merge(points_.back().value);
      return out;
    }
    case Kind::Envelope: {
      // The envelope is non-increasing.
      Enclosure at_b = eval(b, bits);
      if (lo_arg == 0) return Enclosure(at_b.lo, Rational(1));
      Enclosure at_a = eval(lo_arg, bits);
      return Enclosure(at_b.lo, at_a.hi);
    }
  }
  throw DomainError("unreachable target kind");
}

TargetFunction decreasing_envelope(const TargetFunction& g, std::vector<Rational> grid) {
  if (grid.empty()) throw DomainError("envelope grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0 || grid[i] > 1) throw DomainError("envelope grid points must lie in (0, 1]");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw DomainError("envelope grid must be strictly increasing");
    }
  }
  TargetFunction f;
  f.kind_ = TargetFunction::Kind::Envelope;
  f.source_ = "envelope(" + g.describe() + ")";
  f.base_ = std::make_shared<const TargetFunction>(g);
  f.grid_ = std::move(grid);
  f.non_increasing_ = true;
  return f;
}

nlohmann::json TargetFunction::to_json() const {
  nlohmann::json doc;
  switch (kind_) {
    case Kind::Expression:
      doc["expression"] = source_;
      break;
    case Kind::Tabulated: {
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& p : points_) {
        pts.push_back({{"x", rat_to_json(p.x)},
                       {"lo", rat_to_json(p.value.lo)},
                       {"hi", rat_to_json(p.value.hi)}});
      }
      doc["points"] = std::move(pts);
      doc["non_increasing"] = non_increasing_;
      if (quad_coeff_ >= 0) doc["quadratic_tail_coeff"] = rat_to_json(quad_coeff_);
      break;
    }
    case Kind::Envelope:
      throw DomainError("envelope targets have no JSON form; serialize the base instead");
  }
  return doc;
}

TargetFunction TargetFunction::from_json(const nlohmann::json& doc) {
  try {
    if (doc.contains("expression")) {
      return expression(doc.at("expression").get<std::string>());
    }
    if (doc.contains("points")) {
      std::vector<TablePoint> pts;
      for (const auto& p : doc.at("points")) {
        pts.push_back({rat_from_json(p.at("x")),
                       Enclosure(rat_from_json(p.at("lo")), rat_from_json(p.at("hi")))});
      }
      if (doc.contains("quadratic_tail_coeff")) {
        return tabulated_with_quadratic_tail(std::move(pts),
                                             rat_from_json(doc.at("quadratic_tail_coeff")));
      }
      bool mono = doc.value("non_increasing", false);
      return tabulated(std::move(pts), mono);
    }
    throw ParseError("target document needs 'expression' or 'points'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad target document: ") + e.what());
  }
}

}  // namespace cantor
