// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "convexify/geom.hpp"

namespace convexify {

struct Circle {
  double radius = 1.0;
  Point2 center{};
};

struct Ellipse {
  double semi_major = 2.0;
  double semi_minor = 1.0;
};

/// The two graphs x^2 sin(1/x) +- exp(-1/x) on (0, 1/pi], joined at the
/// origin and closed by a rectangular detour around their common left end.
/// The interior is a C shape whose jaws carry interlocking teeth.
struct Teeth {
  int teeth_count = 3;          ///< full periods of sin(1/x) kept
  double feature_floor = 1e-4;  ///< teeth with amplitude below this are dropped
  double detour_x = -0.05;      ///< abscissa of the left closing segment
  double detour_half_height = 0.1;
};

/// The double spiral t^2 e^{i/t} (t > 0), -t^2 e^{-i/t} (t < 0) on
/// [-1/pi, 1/pi], truncated near the origin and closed by a detour above.
struct Spiral {
  int turns = 2;                ///< full turns kept on each arm
  double feature_floor = 1e-4;  ///< arm radius below this is dropped
  double detour_y = 0.12;       ///< ordinate of the upper closing segment
};

struct PolylineCurve {
  Polygon polygon;
};

/// x^2 sin(1/x) + sign * exp(-1/x), extended by 0 at x = 0.
double teeth_branch(double x, int sign);
/// The spiral g(t) from the pathological-curve catalog.
Point2 spiral_point(double t);

/// Closed curve evaluated on s in [0, 2*pi). Circles and ellipses use their
/// angle; polylines put vertex k at 2*pi*k/n; teeth and spiral use a
/// tabulated arc-length parameter but always return exact formula points.
class ParametricCurve {
 public:
  using Shape = std::variant<Circle, Ellipse, Teeth, Spiral, PolylineCurve>;

  explicit ParametricCurve(Shape shape);

  /// Parses "kind=teeth,teeth_count=2" style strings (kind may be given
  /// bare: "circle,radius=2"). Polyline curves are not constructible here.
  static ParametricCurve from_spec(std::string_view spec);

  Point2 evaluate(double s) const;
  const Shape& shape() const noexcept { return shape_; }
  std::string kind() const;
  /// Canonical "kind=...,key=value" string.
  std::string spec() const;

  /// Curve length when it has a usable closed form or tabulation.
  double length() const;

 private:
  struct ArcTable;
  Shape shape_;
  std::shared_ptr<const ArcTable> table_;
};

struct CatalogEntry {
  std::string name;
  std::string default_spec;
  std::string description;
};

std::vector<CatalogEntry> curve_catalog();

/// Vertex k is evaluate(2*pi*k/n).
Polygon inscribe_polygon(const ParametricCurve& curve, std::size_t n);

/// m points at equal boundary arc-length spacing, starting at vertex 0.
Polygon resample_by_arclength(const Polygon& p, std::size_t m);

/// Length of the forward boundary path from vertex i to vertex j, where
/// j may run up to i + n (a full lap).
double arc_length(const Polygon& p, std::size_t i, std::size_t j);

}  // namespace convexify
