// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "convexify/geom.hpp"

namespace convexify::testing {

inline Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
inline Polygon arrowhead() { return Polygon({{0, 0}, {4, 0}, {1, 1}, {0, 4}}); }
inline Polygon bowtie() { return Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}); }

inline Polygon scaled(const Polygon& p, double s) {
  std::vector<Point2> v(p.vertices().begin(), p.vertices().end());
  for (auto& q : v) q *= s;
  return Polygon(std::move(v));
}

/// Rotation by `angle` followed by translation; Point2 math kept local so it
/// does not lean on the library's own helpers.
inline Polygon rigidly_moved(const Polygon& p, double angle, Point2 shift) {
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Point2> v;
  for (const auto& q : p.vertices()) v.push_back({c * q.x - s * q.y + shift.x, s * q.x + c * q.y + shift.y});
  return Polygon(std::move(v));
}

/// Turning angle at each vertex in (-pi, pi].
inline std::vector<double> turning_angles(const Polygon& p) {
  std::vector<double> out;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = p[i] - p[(i + n - 1) % n];
    const Point2 b = p[(i + 1) % n] - p[i];
    out.push_back(std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y));
  }
  return out;
}

/// Independent exhaustive simplicity oracle with strict orientation tests.
inline bool naive_simple(const Polygon& p) {
  auto orient = [](Point2 a, Point2 b, Point2 c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  };
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Point2 a = p[i], b = p[(i + 1) % n], c = p[j], d = p[(j + 1) % n];
      const double o1 = orient(a, b, c), o2 = orient(a, b, d);
      const double o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (o1 * o2 <= 0 && o3 * o4 <= 0) return false;
    }
  }
  return true;
}

/// Star-shaped simple polygon with random radii; retried until it is
/// nonconvex and every turning angle is at least min_turn in magnitude.
inline Polygon random_nonconvex(std::mt19937_64& rng, std::size_t n, double min_turn = 1e-3) {
  std::uniform_real_distribution<double> radius(0.25, 1.0);
  std::uniform_real_distribution<double> jitter(-0.35, 0.35);
  while (true) {
    std::vector<Point2> v;
    for (std::size_t k = 0; k < n; ++k) {
      const double th = 2 * std::numbers::pi * (static_cast<double>(k) + jitter(rng)) /
                        static_cast<double>(n);
      const double r = radius(rng);
      v.push_back({r * std::cos(th), r * std::sin(th)});
    }
    Polygon p(std::move(v));
    if (!naive_simple(p)) continue;
    const auto turns = turning_angles(p);
    const bool has_reflex = std::any_of(turns.begin(), turns.end(), [](double t) { return t < 0; });
    const bool sharp = std::all_of(turns.begin(), turns.end(),
                                   [&](double t) { return std::abs(t) >= min_turn; });
    if (has_reflex && sharp) return p;
  }
}

/// Points on a random ellipse at sorted angles with a minimum gap, so every
/// vertex turns strictly left.
inline Polygon random_convex(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> axis(0.5, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = axis(rng), b = axis(rng), rot = 2 * std::numbers::pi * unit(rng);
  const double gap = 2 * std::numbers::pi / static_cast<double>(n);
  std::vector<Point2> v;
  for (std::size_t k = 0; k < n; ++k) {
    const double th = gap * (static_cast<double>(k) + 0.8 * (unit(rng) - 0.5));
    const double x = a * std::cos(th), y = b * std::sin(th);
    v.push_back({std::cos(rot) * x - std::sin(rot) * y, std::sin(rot) * x + std::cos(rot) * y});
  }
  return Polygon(std::move(v));
}

}  // namespace convexify::testing
