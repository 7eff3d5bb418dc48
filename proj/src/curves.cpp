// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/curves.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "convexify/error.hpp"

namespace convexify {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPi = std::numbers::inv_pi;
constexpr int kBranchSamples = 8192;

double truncation_scale(int periods, double feature_floor) {
  if (periods < 1) throw InputError("period count must be at least 1");
  if (!(feature_floor > 0.0)) throw InputError("feature_floor must be positive");
  return std::max(1.0 / (std::numbers::pi * (1.0 + 2.0 * periods)), std::sqrt(feature_floor));
}

}  // namespace

double teeth_branch(double x, int sign) {
  if (x == 0.0) return 0.0;
  return x * x * std::sin(1.0 / x) + sign * std::exp(-1.0 / x);
}

Point2 spiral_point(double t) {
  if (t == 0.0) return {};
  const double r = t * t;
  if (t > 0.0) return {r * std::cos(1.0 / t), r * std::sin(1.0 / t)};
  return {-r * std::cos(1.0 / t), r * std::sin(1.0 / t)};
}

// Arc-length tabulation over a chain of exactly evaluated pieces.
struct ParametricCurve::ArcTable {
  struct Piece {
    std::function<Point2(double)> eval;  // u in [0, 1]
    std::vector<double> cumulative;      // arc length at u = k / K
  };
  std::vector<Piece> pieces;
  std::vector<double> piece_start;
  double total = 0.0;

  void add(std::function<Point2(double)> eval, int samples) {
    Piece piece{std::move(eval), {}};
    piece.cumulative.resize(samples + 1, 0.0);
    Point2 prev = piece.eval(0.0);
    for (int k = 1; k <= samples; ++k) {
      const Point2 cur = piece.eval(static_cast<double>(k) / samples);
      piece.cumulative[k] = piece.cumulative[k - 1] + distance(prev, cur);
      prev = cur;
    }
    piece_start.push_back(total);
    total += piece.cumulative.back();
    pieces.push_back(std::move(piece));
  }

  void add_segment(Point2 a, Point2 b) {
    add([a, b](double u) { return a + u * (b - a); }, 1);
  }

  Point2 at(double s) const {
    const double target = s / kTwoPi * total;
    auto it = std::upper_bound(piece_start.begin(), piece_start.end(), target);
    const std::size_t idx = static_cast<std::size_t>(std::distance(piece_start.begin(), it)) - 1;
    const Piece& piece = pieces[idx];
    const double local = target - piece_start[idx];
    const auto& cum = piece.cumulative;
    auto jt = std::upper_bound(cum.begin(), cum.end(), local);
    std::size_t k = static_cast<std::size_t>(std::distance(cum.begin(), jt));
    k = std::clamp<std::size_t>(k, 1, cum.size() - 1) - 1;
    const double span = cum[k + 1] - cum[k];
    const double frac = span > 0.0 ? std::clamp((local - cum[k]) / span, 0.0, 1.0) : 0.0;
    const double samples = static_cast<double>(cum.size() - 1);
    return piece.eval((static_cast<double>(k) + frac) / samples);
  }
};

ParametricCurve::ParametricCurve(Shape shape) : shape_(std::move(shape)) {
  if (const auto* c = std::get_if<Circle>(&shape_)) {
    if (!(c->radius > 0.0)) throw InputError("circle radius must be positive");
  } else if (const auto* e = std::get_if<Ellipse>(&shape_)) {
    if (!(e->semi_major > 0.0 && e->semi_minor > 0.0)) {
      throw InputError("ellipse semi-axes must be positive");
    }
  } else if (const auto* t = std::get_if<Teeth>(&shape_)) {
    const double x_lo = truncation_scale(t->teeth_count, t->feature_floor);
    const double x_hi = kInvPi;
    if (!(t->detour_x < 0.0)) throw InputError("teeth detour_x must be left of the origin");
    const double h = t->detour_half_height;
    if (!(h > teeth_branch(x_hi, 1))) throw InputError("teeth detour is too short to close");
    auto table = std::make_shared<ArcTable>();
    table->add([=](double u) {
      const double x = x_hi - u * (x_hi - x_lo);
      return Point2{x, teeth_branch(x, 1)};
    }, kBranchSamples);
    table->add_segment({x_lo, teeth_branch(x_lo, 1)}, {0.0, 0.0});
    table->add_segment({0.0, 0.0}, {x_lo, teeth_branch(x_lo, -1)});
    table->add([=](double u) {
      const double x = x_lo + u * (x_hi - x_lo);
      return Point2{x, teeth_branch(x, -1)};
    }, kBranchSamples);
    table->add_segment({x_hi, teeth_branch(x_hi, -1)}, {x_hi, -h});
    table->add_segment({x_hi, -h}, {t->detour_x, -h});
    table->add_segment({t->detour_x, -h}, {t->detour_x, h});
    table->add_segment({t->detour_x, h}, {x_hi, h});
    table->add_segment({x_hi, h}, {x_hi, teeth_branch(x_hi, 1)});
    table_ = std::move(table);
  } else if (const auto* sp = std::get_if<Spiral>(&shape_)) {
    const double t_lo = truncation_scale(sp->turns, sp->feature_floor);
    const double theta_lo = std::numbers::pi;
    const double theta_hi = 1.0 / t_lo;
    const double r0 = kInvPi * kInvPi;
    if (!(sp->detour_y > r0)) throw InputError("spiral detour_y must clear the outer turn");
    auto table = std::make_shared<ArcTable>();
    table->add([=](double u) {
      return spiral_point(-1.0 / (theta_lo + u * (theta_hi - theta_lo)));
    }, kBranchSamples);
    table->add_segment(spiral_point(-t_lo), spiral_point(t_lo));
    table->add([=](double u) {
      return spiral_point(1.0 / (theta_hi - u * (theta_hi - theta_lo)));
    }, kBranchSamples);
    table->add_segment({-r0, 0.0}, {-r0, sp->detour_y});
    table->add_segment({-r0, sp->detour_y}, {r0, sp->detour_y});
    table->add_segment({r0, sp->detour_y}, {r0, 0.0});
    table_ = std::move(table);
  }
}

Point2 ParametricCurve::evaluate(double s) const {
  if (!(s >= 0.0 && s < kTwoPi)) {
    throw DomainError("curve parameter must lie in [0, 2*pi)");
  }
  return std::visit(
      [&](const auto& c) -> Point2 {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return c.center + c.radius * Point2{std::cos(s), std::sin(s)};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return {c.semi_major * std::cos(s), c.semi_minor * std::sin(s)};
        } else if constexpr (std::is_same_v<T, PolylineCurve>) {
          const std::size_t n = c.polygon.size();
          const double pos = s / kTwoPi * static_cast<double>(n);
          const std::size_t k = std::min(static_cast<std::size_t>(pos), n - 1);
          const double frac = pos - static_cast<double>(k);
          if (frac == 0.0) return c.polygon[k];
          return c.polygon[k] + frac * c.polygon.edge(k);
        } else {
          return table_->at(s);
        }
      },
      shape_);
}

std::string ParametricCurve::kind() const {
  static constexpr const char* names[] = {"circle", "ellipse", "teeth", "spiral", "polyline"};
  return names[shape_.index()];
}

namespace {

std::string fmt_g(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string ParametricCurve::spec() const {
  std::ostringstream os;
  os << "kind=" << kind();
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Circle>) {
          os << ",radius=" << fmt_g(c.radius) << ",cx=" << fmt_g(c.center.x)
             << ",cy=" << fmt_g(c.center.y);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          os << ",a=" << fmt_g(c.semi_major) << ",b=" << fmt_g(c.semi_minor);
        } else if constexpr (std::is_same_v<T, Teeth>) {
          os << ",teeth_count=" << c.teeth_count << ",feature_floor=" << fmt_g(c.feature_floor)
             << ",detour_x=" << fmt_g(c.detour_x)
             << ",detour_half_height=" << fmt_g(c.detour_half_height);
        } else if constexpr (std::is_same_v<T, Spiral>) {
          os << ",turns=" << c.turns << ",feature_floor=" << fmt_g(c.feature_floor)
             << ",detour_y=" << fmt_g(c.detour_y);
        } else {
          os << ",n=" << c.polygon.size();
        }
      },
      shape_);
  return os.str();
}

double ParametricCurve::length() const {
  return std::visit(
      [&](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return kTwoPi * c.radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          // Composite midpoint rule on the speed; smooth periodic integrand.
          constexpr int steps = 1 << 16;
          double total = 0.0;
          for (int k = 0; k < steps; ++k) {
            const double s = (k + 0.5) * kTwoPi / steps;
            total += std::hypot(c.semi_major * std::sin(s), c.semi_minor * std::cos(s));
          }
          return total * kTwoPi / steps;
        } else if constexpr (std::is_same_v<T, PolylineCurve>) {
          return perimeter(c.polygon);
        } else {
          return table_->total;
        }
      },
      shape_);
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InputError("curve parameter '" + key + "' is not a number: '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw InputError("curve parameter '" + key + "' is not an integer: '" + value + "'");
  }
  return v;
}

}  // namespace

ParametricCurve ParametricCurve::from_spec(std::string_view spec) {
  std::map<std::string, std::string> params;
  std::string kind;
  std::stringstream ss{std::string(spec)};
  std::string token;
  bool first = true;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (!first) throw InputError("curve parameter '" + token + "' lacks '=value'");
      kind = token;
    } else {
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "kind") {
        kind = value;
      } else {
        params[key] = value;
      }
    }
    first = false;
  }
  if (kind.empty()) throw InputError("curve spec names no kind");

  auto take = [&](const std::string& key, auto setter) {
    if (auto it = params.find(key); it != params.end()) {
      setter(it->second);
      params.erase(it);
    }
  };
  auto finish = [&](Shape shape) {
    if (!params.empty()) {
      throw InputError("unknown parameter '" + params.begin()->first + "' for curve kind " + kind);
    }
    return ParametricCurve(std::move(shape));
  };

  if (kind == "circle") {
    Circle c;
    take("radius", [&](const std::string& v) { c.radius = parse_double("radius", v); });
    take("cx", [&](const std::string& v) { c.center.x = parse_double("cx", v); });
    take("cy", [&](const std::string& v) { c.center.y = parse_double("cy", v); });
    return finish(c);
  }
  if (kind == "ellipse") {
    Ellipse e;
    take("a", [&](const std::string& v) { e.semi_major = parse_double("a", v); });
    take("b", [&](const std::string& v) { e.semi_minor = parse_double("b", v); });
    return finish(e);
  }
  if (kind == "teeth") {
    Teeth t;
    take("teeth_count", [&](const std::string& v) { t.teeth_count = parse_int("teeth_count", v); });
    take("feature_floor",
         [&](const std::string& v) { t.feature_floor = parse_double("feature_floor", v); });
    take("detour_x", [&](const std::string& v) { t.detour_x = parse_double("detour_x", v); });
    take("detour_half_height", [&](const std::string& v) {
      t.detour_half_height = parse_double("detour_half_height", v);
    });
    return finish(t);
  }
  if (kind == "spiral") {
    Spiral s;
    take("turns", [&](const std::string& v) { s.turns = parse_int("turns", v); });
    take("feature_floor",
         [&](const std::string& v) { s.feature_floor = parse_double("feature_floor", v); });
    take("detour_y", [&](const std::string& v) { s.detour_y = parse_double("detour_y", v); });
    return finish(s);
  }
  if (kind == "polyline") {
    throw InputError("polyline curves are built from a polygon document, not a spec string");
  }
  throw InputError("unknown curve kind '" + kind + "'");
}

std::vector<CatalogEntry> curve_catalog() {
  return {
      {"circle", "kind=circle,radius=1", "circle of given radius and center"},
      {"ellipse", "kind=ellipse,a=2,b=1", "axis-aligned ellipse"},
      {"teeth", "kind=teeth,teeth_count=3",
       "interlocking teeth between x^2 sin(1/x) +- exp(-1/x), closed around the left"},
      {"spiral", "kind=spiral,turns=2", "double spiral t^2 exp(i/t), closed above"},
      {"polyline", "(polygon document)", "polygon wrapped as a curve; vertex k at 2*pi*k/n"},
  };
}

Polygon inscribe_polygon(const ParametricCurve& curve, std::size_t n) {
  if (n < 3) throw InputError("inscribed polygon needs n >= 3");
  std::vector<Point2> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts[k] = curve.evaluate(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  return Polygon(std::move(pts));
}

Polygon resample_by_arclength(const Polygon& p, std::size_t m) {
  if (m < 3) throw InputError("resampling needs m >= 3");
  const auto lengths = edge_lengths(p);
  double total = 0.0;
  for (double l : lengths) total += l;
  std::vector<Point2> out;
  out.reserve(m);
  std::size_t edge = 0;
  double edge_start = 0.0;  // arc length at vertex `edge`
  for (std::size_t k = 0; k < m; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(m);
    while (edge + 1 < p.size() && edge_start + lengths[edge] <= target) {
      edge_start += lengths[edge];
      ++edge;
    }
    const double frac = std::clamp((target - edge_start) / lengths[edge], 0.0, 1.0);
    out.push_back(frac == 0.0 ? p[edge] : p[edge] + frac * p.edge(edge));
  }
  return Polygon(std::move(out));
}

double arc_length(const Polygon& p, std::size_t i, std::size_t j) {
  const std::size_t n = p.size();
  const std::size_t steps = j >= i ? j - i : j + n - i;
  if (steps > n) throw InputError("arc_length path longer than one lap");
  double total = 0.0;
  for (std::size_t s = 0, k = p.wrap(i); s < steps; ++s, k = p.next(k)) total += norm(p.edge(k));
  return total;
}

}  // namespace convexify
