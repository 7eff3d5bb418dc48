// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace convexify {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, const Point2& b) { return a += b; }
constexpr Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
constexpr Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }
constexpr Point2 operator*(Point2 a, double s) { return a *= s; }
constexpr Point2 operator*(double s, Point2 a) { return a *= s; }

constexpr double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise quarter turn.
constexpr Point2 rot90(const Point2& a) { return {-a.y, a.x}; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(a - b); }
inline bool is_finite(const Point2& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Twice the signed area of triangle abc; positive when abc turns left.
constexpr double orient(const Point2& a, const Point2& b, const Point2& c) {
  return cross(b - a, c - a);
}

double point_segment_distance(const Point2& p, const Point2& a, const Point2& b);
double segment_segment_distance(const Point2& a, const Point2& b, const Point2& c,
                                const Point2& d);
/// True when closed segments ab and cd share a point (exact sign tests).
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Tolerances shared by the solver, flow, and predicates. All must be > 0.
struct ToleranceProfile {
  double eq_tol = 1e-8;      ///< equality-row and equilibrium residuals
  double strut_tol = 1e-9;   ///< inequality slack; blocked threshold on eps
  double length_tol = 1e-7;  ///< admissible edge-length drift
  double geom_tol = 1e-7;    ///< simplicity and convexity predicates (relative)

  void validate() const;
};

/// Closed planar polygon; vertex n-1 connects back to vertex 0.
class Polygon {
 public:
  /// Throws InputError unless there are >= 3 finite vertices and no two
  /// cyclically consecutive vertices coincide.
  explicit Polygon(std::vector<Point2> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  const Point2& at(std::size_t i) const { return vertices_[wrap(i)]; }
  std::span<const Point2> vertices() const noexcept { return vertices_; }

  std::size_t next(std::size_t i) const noexcept { return (i + 1) % size(); }
  std::size_t prev(std::size_t i) const noexcept { return (i + size() - 1) % size(); }
  std::size_t wrap(std::size_t i) const noexcept { return i % size(); }
  Point2 edge(std::size_t k) const { return vertices_[next(k)] - vertices_[k]; }

  /// Largest side of the axis-aligned bounding box.
  double extent() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point2> vertices_;
};

std::vector<double> edge_lengths(const Polygon& p);
double perimeter(const Polygon& p);
double signed_area(const Polygon& p);
/// Pairwise vertex distances, row-major n*n.
std::vector<double> distance_matrix(const Polygon& p);

/// Sine of the turning angle at each vertex, signed by orientation.
std::vector<double> turning_sines(const Polygon& p);

/// Exhaustive segment-pair test; near-contacts closer than geom_tol * extent
/// count as intersections.
bool is_simple(const Polygon& p, double geom_tol = ToleranceProfile{}.geom_tol);

enum class Convexity { Convex, Reflex, NotSimple };

struct ConvexityReport {
  Convexity kind = Convexity::NotSimple;
  std::vector<std::size_t> straight_vertices;  ///< |turning sine| <= geom_tol
};

ConvexityReport classify_convexity(const Polygon& p, double geom_tol = ToleranceProfile{}.geom_tol);

/// Boundary in convex position. Straight vertices are tolerated.
bool is_convex(const Polygon& p, double geom_tol = ToleranceProfile{}.geom_tol);

/// Unweighted pair sum of vertex distances over i < j.
double interdistance_functional(const Polygon& p);

/// p "is dominated by" q: every vertex distance of p is at most the same
/// distance in q plus slack. Throws InputError on mismatched vertex counts.
bool dominates(const Polygon& p, const Polygon& q, double slack = 0.0);

}  // namespace convexify
