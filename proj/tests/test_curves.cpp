// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "convexify/arrangement.hpp"
#include "convexify/curves.hpp"
#include "convexify/error.hpp"
#include "support.hpp"

namespace convexify {
namespace {

constexpr double kPi = std::numbers::pi;

double shoelace(const Polygon& p) {
  double a = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2 u = p[i], v = p[(i + 1) % p.size()];
    a += u.x * v.y - u.y * v.x;
  }
  return 0.5 * a;
}

TEST(Evaluate, CircleQuarterTurn) {
  const Point2 q = ParametricCurve(Circle{}).evaluate(kPi / 2);
  EXPECT_NEAR(q.x, 0.0, 1e-15);
  EXPECT_NEAR(q.y, 1.0, 1e-15);
}

TEST(Evaluate, TeethBranchAtOneOverPi) {
  EXPECT_NEAR(teeth_branch(1 / kPi, +1), std::exp(-kPi), 1e-15);
  EXPECT_NEAR(teeth_branch(1 / kPi, +1), 0.0432139, 1e-7);
  EXPECT_NEAR(teeth_branch(1 / kPi, -1), -std::exp(-kPi), 1e-15);
}

TEST(Evaluate, SpiralAtOneOverPi) {
  const Point2 q = spiral_point(1 / kPi);
  EXPECT_NEAR(q.x, -1 / (kPi * kPi), 1e-15);
  EXPECT_NEAR(q.x, -0.1013212, 1e-7);
  EXPECT_NEAR(q.y, 0.0, 1e-15);
}

TEST(Evaluate, EveryKindIsFiniteOnTheDomain) {
  for (const char* spec : {"circle", "kind=ellipse,a=3,b=1", "kind=teeth,teeth_count=2",
                           "kind=spiral,turns=2"}) {
    const auto c = ParametricCurve::from_spec(spec);
    for (int k = 0; k < 1000; ++k) {
      EXPECT_TRUE(is_finite(c.evaluate(2 * kPi * k / 1000.0))) << spec;
    }
  }
}

TEST(Evaluate, TeethClosureSitsOnTheLeft) {
  const auto c = ParametricCurve::from_spec("kind=teeth,teeth_count=2");
  double min_x = 1e9;
  for (int k = 0; k < 2000; ++k) min_x = std::min(min_x, c.evaluate(2 * kPi * k / 2000.0).x);
  EXPECT_NEAR(min_x, -0.05, 1e-12);
}

TEST(FromSpec, RoundTripsAndRejectsGarbage) {
  const auto c = ParametricCurve::from_spec("kind=teeth,teeth_count=2");
  EXPECT_EQ(c.kind(), "teeth");
  EXPECT_EQ(ParametricCurve::from_spec(c.spec()).spec(), c.spec());
  EXPECT_THROW(ParametricCurve::from_spec("kind=hexagon"), InputError);
  EXPECT_THROW(ParametricCurve::from_spec("kind=circle,radius=-1"), InputError);
  EXPECT_THROW(ParametricCurve::from_spec("kind=circle,radius=abc"), InputError);
  EXPECT_THROW(ParametricCurve::from_spec("kind=circle,colour=red"), InputError);
}

TEST(Catalog, ListsEveryKind) {
  std::vector<std::string> names;
  for (const auto& e : curve_catalog()) names.push_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"circle", "ellipse", "teeth", "spiral", "polyline"}));
}

TEST(Inscribe, UnitCircleSquare) {
  const Polygon p = inscribe_polygon(ParametricCurve(Circle{}), 4);
  const Point2 want[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(p[k].x, want[k].x, 1e-15);
    EXPECT_NEAR(p[k].y, want[k].y, 1e-15);
  }
}

TEST(Inscribe, UnitCirclePerimeterClosedForm) {
  const double per = perimeter(inscribe_polygon(ParametricCurve(Circle{}), 96));
  EXPECT_NEAR(per, 2 * 96 * std::sin(kPi / 96), 1e-12);
  EXPECT_NEAR(per, 6.282064, 1e-6);
  EXPECT_LT(2 * kPi - per, 3e-3);
}

TEST(Inscribe, PolylineAtItsOwnVertexCountIsIdentity) {
  const Polygon p = testing::arrowhead();
  const Polygon q = inscribe_polygon(ParametricCurve(PolylineCurve{p}), p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_NEAR(q[k].x, p[k].x, 1e-14);
    EXPECT_NEAR(q[k].y, p[k].y, 1e-14);
  }
}

TEST(Inscribe, RejectsTooFewVertices) {
  EXPECT_THROW(inscribe_polygon(ParametricCurve(Circle{}), 2), InputError);
}

TEST(Inscribe, PerimeterGrowsAlongDoublingAndStaysBelowLength) {
  for (const char* spec : {"circle", "kind=ellipse,a=2,b=1"}) {
    const auto c = ParametricCurve::from_spec(spec);
    double last = 0;
    for (std::size_t n = 8; n <= 512; n *= 2) {
      const double per = perimeter(inscribe_polygon(c, n));
      EXPECT_GE(per, last - 1e-12) << spec << " n=" << n;
      EXPECT_LE(per, c.length() + 1e-9) << spec << " n=" << n;
      last = per;
    }
  }
}

TEST(Repair, SimplePolygonUnchanged) {
  EXPECT_EQ(repair_to_simple(testing::unit_square()), testing::unit_square());
}

TEST(Repair, BowtieGivesQuarterAreaTriangle) {
  const Polygon r = repair_to_simple(testing::bowtie());
  EXPECT_EQ(r.size(), 3u);
  EXPECT_NEAR(shoelace(r), 0.25, 1e-12);
  EXPECT_TRUE(is_simple(r));
  // Lowest-index seed: the triangle through input vertex 0.
  bool has_origin = false;
  for (const auto& q : r.vertices()) has_origin |= q == Point2{0, 0};
  EXPECT_TRUE(has_origin);
}

TEST(Repair, SpuriousLoopIsDiscarded) {
  // Unit square whose top edge makes a tiny self-crossing loop.
  const Polygon p({{0, 0}, {1, 0}, {1, 1}, {0.52, 1}, {0.49, 1.02}, {0.49, 0.99}, {0.5, 1.01},
                   {0, 1}});
  ASSERT_FALSE(is_simple(p));
  const Polygon r = repair_to_simple(p);
  EXPECT_TRUE(is_simple(r));
  EXPECT_NEAR(shoelace(r), shoelace(Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), 0.01);
  EXPECT_GT(shoelace(r), 0.98);
}

TEST(Repair, PathologicalCurvesBecomeSimple) {
  for (const char* spec : {"kind=teeth,teeth_count=2", "kind=teeth,teeth_count=3", "kind=spiral"}) {
    const auto c = ParametricCurve::from_spec(spec);
    for (std::size_t n : {32, 48, 64, 128, 256, 512}) {
      const Polygon r = repair_to_simple(inscribe_polygon(c, n));
      EXPECT_TRUE(is_simple(r)) << spec << " n=" << n;
      EXPECT_GT(std::abs(signed_area(r)), 0.02);
    }
  }
}

TEST(Repair, OutputVerticesComeFromTheArrangement) {
  const Polygon p = inscribe_polygon(ParametricCurve::from_spec("kind=spiral"), 64);
  const Arrangement a = build_arrangement(p, ToleranceProfile{}.geom_tol * p.extent());
  const Polygon r = repair_to_simple(p);
  for (const auto& q : r.vertices()) {
    double best = 1e9;
    for (const auto& v : a.vertices) best = std::min(best, distance(q, v));
    EXPECT_LE(best, 1e-12);
  }
}

TEST(Resample, SquareToEightAddsMidpoints) {
  const Polygon r = resample_by_arclength(testing::unit_square(), 8);
  const Point2 want[] = {{0, 0}, {0.5, 0}, {1, 0}, {1, 0.5}, {1, 1}, {0.5, 1}, {0, 1}, {0, 0.5}};
  for (int k = 0; k < 8; ++k) {
    EXPECT_NEAR(r[k].x, want[k].x, 1e-15);
    EXPECT_NEAR(r[k].y, want[k].y, 1e-15);
  }
}

TEST(Resample, EquallySpacedInputIsFixed) {
  const Polygon p = testing::unit_square();
  const Polygon r = resample_by_arclength(p, 4);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(distance(r[k], p[k]), 0.0, 1e-15);
}

TEST(Resample, PerimeterAndBoundaryMembership) {
  const Polygon p = testing::arrowhead();
  const Polygon r = resample_by_arclength(p, 50);
  EXPECT_LE(perimeter(r), perimeter(p) + 1e-12);
  for (const auto& q : r.vertices()) {
    double best = 1e9;
    for (std::size_t k = 0; k < p.size(); ++k) {
      best = std::min(best, point_segment_distance(q, p[k], p[p.next(k)]));
    }
    EXPECT_LE(best, 1e-12);
  }
  // Hitting every original vertex keeps the perimeter exactly.
  const Polygon sq = resample_by_arclength(testing::unit_square(), 40);
  EXPECT_NEAR(perimeter(sq), 4.0, 1e-9);
}

TEST(ArcLength, Examples) {
  const Polygon sq = testing::unit_square();
  EXPECT_DOUBLE_EQ(arc_length(sq, 0, 2), 2.0);
  EXPECT_DOUBLE_EQ(arc_length(sq, 1, 1), 0.0);
  EXPECT_DOUBLE_EQ(arc_length(sq, 3, 3 + 4), 4.0);
  EXPECT_DOUBLE_EQ(arc_length(sq, 3, 1), 2.0);
}

}  // namespace
}  // namespace convexify
