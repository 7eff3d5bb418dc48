// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/geom.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "convexify/error.hpp"

namespace convexify {

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + s * ab);
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment_collinear(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int o1 = sign_of(orient(a, b, c));
  const int o2 = sign_of(orient(a, b, d));
  const int o3 = sign_of(orient(c, d, a));
  const int o4 = sign_of(orient(c, d, b));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
  if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
  if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
  if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
  return false;
}

double segment_segment_distance(const Point2& a, const Point2& b, const Point2& c,
                                const Point2& d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

void ToleranceProfile::validate() const {
  for (double v : {eq_tol, strut_tol, length_tol, geom_tol}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("tolerances must be finite and positive");
    }
  }
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw InputError("polygon needs at least 3 vertices, got " + std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw InputError("vertex " + std::to_string(i) + " is not finite");
    }
    if (vertices_[i] == vertices_[next(i)]) {
      throw InputError("vertices " + std::to_string(i) + " and " + std::to_string(next(i)) +
                       " coincide (zero-length edge)");
    }
  }
}

double Polygon::extent() const {
  double lo_x = vertices_[0].x, hi_x = lo_x, lo_y = vertices_[0].y, hi_y = lo_y;
  for (const auto& v : vertices_) {
    lo_x = std::min(lo_x, v.x);
    hi_x = std::max(hi_x, v.x);
    lo_y = std::min(lo_y, v.y);
    hi_y = std::max(hi_y, v.y);
  }
  return std::max(hi_x - lo_x, hi_y - lo_y);
}

std::vector<double> edge_lengths(const Polygon& p) {
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = norm(p.edge(k));
  return out;
}

double perimeter(const Polygon& p) {
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) total += norm(p.edge(k));
  return total;
}

double signed_area(const Polygon& p) {
  double twice = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) twice += cross(p[k], p[p.next(k)]);
  return 0.5 * twice;
}

std::vector<double> distance_matrix(const Polygon& p) {
  const std::size_t n = p.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = distance(p[i], p[j]);
    }
  }
  return d;
}

std::vector<double> turning_sines(const Polygon& p) {
  std::vector<double> s(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2 in = p.edge(p.prev(i));
    const Point2 out = p.edge(i);
    s[i] = cross(in, out) / (norm(in) * norm(out));
  }
  return s;
}

bool is_simple(const Polygon& p, double geom_tol) {
  const std::size_t n = p.size();
  const double tol = geom_tol * p.extent();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = p[i];
    const Point2& b = p[p.next(i)];
    // Adjacent edges (i, i+1) and (i+1, i+2) may only share their vertex:
    // reject fold-backs where one edge doubles over the other.
    const Point2& c = p[p.next(p.next(i))];
    if (point_segment_distance(c, a, b) <= tol || point_segment_distance(a, b, c) <= tol) {
      return false;
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segment_segment_distance(a, b, p[j], p[p.next(j)]) <= tol) return false;
    }
  }
  return true;
}

ConvexityReport classify_convexity(const Polygon& p, double geom_tol) {
  ConvexityReport report;
  if (!is_simple(p, geom_tol)) return report;
  const auto s = turning_sines(p);
  bool any_pos = false, any_neg = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s[i]) <= geom_tol) {
      report.straight_vertices.push_back(i);
    } else if (s[i] > 0.0) {
      any_pos = true;
    } else {
      any_neg = true;
    }
  }
  report.kind = (any_pos && any_neg) ? Convexity::Reflex : Convexity::Convex;
  return report;
}

bool is_convex(const Polygon& p, double geom_tol) {
  return classify_convexity(p, geom_tol).kind == Convexity::Convex;
}

double interdistance_functional(const Polygon& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) total += distance(p[i], p[j]);
  }
  return total;
}

bool dominates(const Polygon& p, const Polygon& q, double slack) {
  if (p.size() != q.size()) {
    throw InputError("dominance needs equal vertex counts (" + std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()) + ")");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (distance(p[i], p[j]) > distance(q[i], q[j]) + slack) return false;
    }
  }
  return true;
}

}  // namespace convexify
