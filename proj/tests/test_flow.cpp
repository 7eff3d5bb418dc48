// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "convexify/arrangement.hpp"
#include "convexify/curves.hpp"
#include "convexify/error.hpp"
#include "convexify/flow.hpp"
#include "support.hpp"

namespace convexify {
namespace {

double max_residual(const Polygon& p, const std::vector<double>& targets) {
  double r = 0;
  const auto l = edge_lengths(p);
  for (std::size_t k = 0; k < l.size(); ++k) r = std::max(r, std::abs(l[k] - targets[k]));
  return r;
}

TEST(Project, AtTargetsIsUnchanged) {
  const Polygon p = testing::arrowhead();
  const Polygon q = project_edge_lengths(p, edge_lengths(p), 1e-12);
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(distance(p[k], q[k]), 0.0, 1e-15);
}

TEST(Project, StretchedSquareEdgeIsRestored) {
  const Polygon stretched({{0, 0}, {1.001, 0}, {1.001, 1}, {0, 1}});
  const std::vector<double> targets(4, 1.0);
  const Polygon q = project_edge_lengths(stretched, targets, 1e-10, 50);
  EXPECT_LE(max_residual(q, targets), 1e-10);
}

TEST(Project, ImpossibleTargetsRaiseConvergenceError) {
  try {
    project_edge_lengths(testing::unit_square(), {10, 1, 1, 1}, 1e-10, 200);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), 1.0);
  }
  EXPECT_THROW(project_edge_lengths(testing::unit_square(), {1, 1, 1}, 1e-10), InputError);
}

TEST(Step, ZeroVelocityIsIdentity) {
  const Polygon p = testing::arrowhead();
  const Polygon q = step(p, Velocities(4), 0.1, edge_lengths(p));
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(distance(p[k], q[k]), 0.0, 1e-15);
}

TEST(Step, TranslationMovesRigidly) {
  const Polygon p = testing::arrowhead();
  const Polygon q = step(p, Velocities(4, Point2{1, -2}), 0.37, edge_lengths(p));
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_NEAR(q[k].x, p[k].x + 0.37, 1e-14);
    EXPECT_NEAR(q[k].y, p[k].y - 0.74, 1e-14);
  }
  EXPECT_LE(max_residual(q, edge_lengths(p)), 1e-14);
}

TEST(Step, ArrowheadExpansionIncreasesStrutDistances) {
  const Polygon p = testing::arrowhead();
  const Framework f(p, default_struts(p, StrutRule::Nonadjacent));
  const Expansion ex = std::get<Expansion>(solve_infinitesimal_expansion({f}));
  const Polygon q = step(p, ex.v, 1e-3, edge_lengths(p));
  for (const auto& [i, j] : f.struts()) EXPECT_GT(distance(q[i], q[j]), distance(p[i], p[j]));
  EXPECT_LE(max_residual(q, edge_lengths(p)), 1e-11);
}

TEST(Unfold, ConvexInputIsASingleSnapshot) {
  const Trajectory t = unfold(testing::unit_square());
  EXPECT_TRUE(t.success());
  EXPECT_EQ(t.snapshots.size(), 1u);
  EXPECT_EQ(t.diagnostics.size(), 1u);
  EXPECT_TRUE(verify_trajectory(t, {}).pass);
}

TEST(Unfold, ArrowheadBecomesConvexWithIncreasingE) {
  const Trajectory t = unfold(testing::arrowhead());
  ASSERT_TRUE(t.success()) << t.message;
  EXPECT_GT(t.snapshots.size(), 1u);
  EXPECT_TRUE(is_convex(t.final_polygon()));
  for (std::size_t k = 1; k < t.snapshots.size(); ++k) {
    EXPECT_GT(interdistance_functional(t.snapshots[k].polygon),
              interdistance_functional(t.snapshots[k - 1].polygon));
    EXPECT_GT(t.snapshots[k].time, t.snapshots[k - 1].time);
  }
  const auto rep = verify_trajectory(t, {});
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(Unfold, TeethDiscretizationConvexifies) {
  const auto c = ParametricCurve::from_spec("kind=teeth,teeth_count=2");
  const Polygon p = resample_by_arclength(repair_to_simple(inscribe_polygon(c, 48)), 40);
  ASSERT_TRUE(is_simple(p));
  ASSERT_FALSE(is_convex(p));
  FlowConfig cfg;
  std::size_t calls = 0;
  cfg.on_step = [&](const StepDiagnostics&) { ++calls; };
  const Trajectory t = unfold(p, cfg);
  ASSERT_TRUE(t.success()) << t.message;
  EXPECT_LE(t.snapshots.size(), cfg.max_steps + 1);
  EXPECT_EQ(calls, t.snapshots.size() - 1);
  const auto rep = verify_trajectory(t, cfg.tol);
  EXPECT_TRUE(rep.pass);
  for (const auto& d : t.diagnostics) {
    EXPECT_TRUE(d.simple);
    EXPECT_LE(d.max_bar_residual, cfg.tol.length_tol);
  }
}

TEST(Unfold, StopAtMaxSteps) {
  FlowConfig cfg;
  cfg.max_steps = 3;
  cfg.stop_mode = StopMode::MaxSteps;
  const Trajectory t = unfold(testing::arrowhead(), cfg);
  EXPECT_EQ(t.status, FlowStatus::MaxSteps);
  EXPECT_EQ(t.snapshots.size(), 4u);
  EXPECT_TRUE(verify_trajectory(t, {}).pass);
}

TEST(Unfold, RejectsBadInput) {
  EXPECT_THROW(unfold(testing::bowtie()), InputError);
  FlowConfig cfg;
  cfg.h0 = -1;
  EXPECT_THROW(unfold(testing::arrowhead(), cfg), InputError);
}

TEST(Verify, InjectedMidpointFaultIsFlagged) {
  Trajectory t = unfold(testing::arrowhead());
  ASSERT_GT(t.snapshots.size(), 4u);
  const std::size_t mid = t.snapshots.size() / 2;
  std::vector<Point2> v(t.snapshots[mid].polygon.vertices().begin(),
                        t.snapshots[mid].polygon.vertices().end());
  v[2] += Point2{-0.05, -0.05};
  t.snapshots[mid].polygon = Polygon(v);
  const auto rep = verify_trajectory(t, {});
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.lengths_ok && rep.dominance_ok);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(Verify, SingleSnapshotIsVacuousExceptConvexity) {
  Trajectory t;
  t.snapshots.push_back({0.0, testing::arrowhead()});
  t.diagnostics.push_back({});
  t.status = FlowStatus::MaxSteps;
  EXPECT_TRUE(verify_trajectory(t, {}).pass);
  t.status = FlowStatus::Converged;
  const auto rep = verify_trajectory(t, {});
  EXPECT_TRUE(rep.lengths_ok && rep.dominance_ok && rep.simple_ok);
  EXPECT_FALSE(rep.convex_ok);
  EXPECT_FALSE(rep.pass);
}

TEST(Reparameterize, TwoSnapshotsRelabelToUnitInterval) {
  Trajectory t;
  t.snapshots.push_back({0.5, testing::unit_square()});
  t.snapshots.push_back({2.0, testing::scaled(testing::unit_square(), 2)});
  t.diagnostics.resize(2);
  const Trajectory r = reparameterize_by_E(t);
  ASSERT_EQ(r.snapshots.size(), 2u);
  EXPECT_EQ(r.snapshots[0].time, 0.0);
  EXPECT_EQ(r.snapshots[1].time, 1.0);
  EXPECT_EQ(r.snapshots[0].polygon, t.snapshots[0].polygon);
  EXPECT_EQ(r.snapshots[1].polygon, t.snapshots[1].polygon);
}

TEST(Reparameterize, ArrowheadEnergyIsAffine) {
  const Trajectory t = unfold(testing::arrowhead());
  ASSERT_TRUE(t.success());
  for (std::size_t frames : {std::size_t{0}, std::size_t{25}}) {
    const Trajectory r = reparameterize_by_E(t, frames);
    const double e0 = interdistance_functional(r.snapshots.front().polygon);
    const double e1 = interdistance_functional(r.snapshots.back().polygon);
    for (const auto& s : r.snapshots) {
      const double want = e0 + s.time * (e1 - e0);
      EXPECT_LE(std::abs(interdistance_functional(s.polygon) - want), 1e-6 * std::abs(want));
    }
  }
}

TEST(Reparameterize, ConstantTrajectoryThrows) {
  EXPECT_THROW(reparameterize_by_E(unfold(testing::unit_square())), InputError);
  Trajectory t;
  t.snapshots = {{0.0, testing::unit_square()}, {1.0, testing::unit_square()}};
  t.diagnostics.resize(2);
  EXPECT_THROW(reparameterize_by_E(t), InputError);
}

TEST(Names, RoundTrip) {
  EXPECT_EQ(parse_stop_mode(to_string(StopMode::MaxSteps)), StopMode::MaxSteps);
  EXPECT_EQ(parse_stop_mode("convex"), StopMode::Convex);
  EXPECT_THROW(parse_stop_mode("never"), InputError);
  EXPECT_STREQ(to_string(FlowStatus::Converged), "Converged");
}

}  // namespace
}  // namespace convexify
