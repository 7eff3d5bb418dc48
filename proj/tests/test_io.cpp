// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "convexify/io.hpp"
#include "support.hpp"

namespace convexify {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("convexify_io_" + std::to_string(std::random_device{}()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

using PolygonIo = TempDir;

TEST_F(PolygonIo, WriteThenReadIsIdentical) {
  const Polygon sq = testing::unit_square();
  const io::PolygonMetadata meta{"square", "kind=circle", 4};
  io::write_polygon(sq, dir_ / "sq.json", meta);
  const auto doc = io::read_polygon(dir_ / "sq.json");
  EXPECT_EQ(doc.polygon, sq);
  EXPECT_EQ(doc.metadata, meta);
}

TEST_F(PolygonIo, RoundTripIsByteFaithful) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon p = testing::random_nonconvex(rng, 9);
    const fs::path a = dir_ / "a.json", b = dir_ / "b.json";
    io::write_polygon(p, a);
    const auto doc = io::read_polygon(a);
    EXPECT_EQ(doc.polygon, p);  // bitwise equal doubles
    io::write_polygon(doc.polygon, b);
    EXPECT_EQ(io::read_text(a), io::read_text(b));
  }
}

TEST(PolygonParse, TruncatedDocumentNamesTheOffset) {
  const std::string full = io::polygon_to_json(testing::arrowhead());
  const std::string cut = full.substr(0, full.size() / 2);
  try {
    io::parse_polygon(cut);
    FAIL() << "expected ParseError";
  } catch (const io::ParseError& e) {
    EXPECT_NE(e.offset(), std::string::npos);
    EXPECT_LE(e.offset(), cut.size());
    EXPECT_NE(std::string(e.what()).find(std::to_string(e.offset())), std::string::npos);
  }
}

TEST(PolygonParse, TwoVertexDocumentFailsValidation) {
  const std::string text =
      R"({"format": "convexify.polygon", "version": 1, "vertices": [[0, 0], [1, 0]]})";
  EXPECT_THROW(io::parse_polygon(text), InputError);
}

TEST(PolygonParse, StructuralErrors) {
  EXPECT_THROW(io::parse_polygon(R"({"format": "convexify.polygon", "version": 2, "vertices": []})"),
               io::ParseError);
  EXPECT_THROW(io::parse_polygon(R"({"format": "other", "version": 1, "vertices": []})"),
               io::ParseError);
  EXPECT_THROW(io::parse_polygon(R"({"format": "convexify.polygon", "version": 1,
                                   "vertices": [[0, 0], [1, "x"], [0, 1]]})"),
               io::ParseError);
  try {
    io::parse_polygon(R"({"format": "convexify.polygon", "version": 1})");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.offset(), std::string::npos);
  }
}

TEST(FrameworkIo, RoundTripWithStress) {
  const Framework f(testing::unit_square(), {{0, 2}, {1, 3}});
  const StressCertificate s{Eigen::VectorXd::Constant(4, -1.0), Eigen::VectorXd::Constant(2, 1.0)};
  const auto doc = io::parse_framework(io::framework_to_json(f, &s));
  EXPECT_EQ(doc.framework.polygon(), f.polygon());
  EXPECT_EQ(doc.framework.struts(), f.struts());
  ASSERT_TRUE(doc.stress.has_value());
  EXPECT_EQ(doc.stress->omega, s.omega);
  EXPECT_EQ(doc.stress->t, s.t);
  EXPECT_FALSE(io::parse_framework(io::framework_to_json(f)).stress.has_value());
}

TEST(ExpansionIo, BlockedDocumentFeedsTheFramework) {
  const ExpansionProblem prob{Framework(testing::unit_square(), {{0, 2}, {1, 3}})};
  const auto r = solve_infinitesimal_expansion(prob);
  const std::string text = io::expansion_result_to_json(prob, r, {});
  const json doc = json::parse(text);
  EXPECT_EQ(doc["branch"], "Blocked");
  EXPECT_EQ(doc["validation"]["dichotomy"], "Convex");
  for (double t : doc["certificate"]["t"]) EXPECT_NEAR(t, 0.5, 1e-8);
  for (double w : doc["certificate"]["omega"]) EXPECT_NEAR(w, -0.5, 1e-8);
  const auto fw = io::parse_framework(text);
  ASSERT_TRUE(fw.stress.has_value());
  EXPECT_TRUE(is_equilibrium_stress(fw.framework, *fw.stress, 1e-8).equilibrium);
}

TEST(ExpansionIo, ExpansionDocument) {
  const Polygon p = testing::arrowhead();
  const ExpansionProblem prob{Framework(p, default_struts(p, StrutRule::Nonadjacent))};
  const json doc = json::parse(io::expansion_result_to_json(prob, solve_infinitesimal_expansion(prob), {}));
  EXPECT_EQ(doc["branch"], "Expansion");
  EXPECT_GT(doc["eps"].get<double>(), 0.0);
  EXPECT_EQ(doc["velocities"].size(), 4u);
  EXPECT_TRUE(doc["validation"]["pass"].get<bool>());
}

using TrajectoryIo = TempDir;

TEST_F(TrajectoryIo, CsvRowCountAndRoundTrip) {
  const FlowConfig cfg;
  const Trajectory t = unfold(testing::arrowhead(), cfg);
  std::ostringstream os;
  io::write_trajectory_csv(t, cfg, os);
  const std::string text = os.str();

  std::size_t header = 0, v_rows = 0, d_rows = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.starts_with("#")) ++header;
    if (line.starts_with("V,")) ++v_rows;
    if (line.starts_with("D,")) ++d_rows;
  }
  EXPECT_GT(header, 0u);
  EXPECT_EQ(v_rows, t.snapshots.size() * 4);
  EXPECT_EQ(d_rows, t.snapshots.size());

  std::istringstream in(text);
  const auto doc = io::parse_trajectory_csv(in);
  ASSERT_EQ(doc.trajectory.snapshots.size(), t.snapshots.size());
  for (std::size_t k = 0; k < t.snapshots.size(); ++k) {
    EXPECT_EQ(doc.trajectory.snapshots[k].time, t.snapshots[k].time);
    EXPECT_EQ(doc.trajectory.snapshots[k].polygon, t.snapshots[k].polygon);
    EXPECT_EQ(doc.trajectory.diagnostics[k].energy, t.diagnostics[k].energy);
  }
  EXPECT_EQ(doc.trajectory.status, t.status);
  EXPECT_EQ(doc.tol.length_tol, cfg.tol.length_tol);
  EXPECT_EQ(doc.config.max_steps, cfg.max_steps);
  EXPECT_TRUE(verify_trajectory(doc.trajectory, doc.tol).pass);

  std::ostringstream again;
  io::write_trajectory_csv(doc.trajectory, doc.config, again);
  EXPECT_EQ(again.str(), text);

  io::emit_trajectory_csv(t, cfg, dir_ / "t.csv");
  EXPECT_EQ(io::read_text(dir_ / "t.csv"), text);
}

TEST(TrajectoryParse, MissingVertexRowIsAnError) {
  const FlowConfig cfg;
  std::ostringstream os;
  io::write_trajectory_csv(unfold(testing::arrowhead(), cfg), cfg, os);
  std::string text = os.str();
  const std::size_t row = text.find("\nV,");
  const std::size_t end = text.find('\n', row + 1);
  text.erase(row, end - row);
  std::istringstream in(text);
  EXPECT_THROW(io::parse_trajectory_csv(in), io::ParseError);
}

using SvgIo = TempDir;

TEST_F(SvgIo, SingleSnapshotGivesOneFrame) {
  Trajectory t;
  t.snapshots.push_back({0.0, testing::unit_square()});
  t.diagnostics.push_back({});
  t.status = FlowStatus::Converged;
  const auto frames = io::emit_svg_frames(t, dir_, 1);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0].filename(), "frame_0000.svg");
  const std::string svg = io::read_text(frames[0]);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
}

TEST_F(SvgIo, ArrowheadTenFrames) {
  const Trajectory t = unfold(testing::arrowhead());
  ASSERT_TRUE(t.success());
  const auto frames = io::emit_svg_frames(t, dir_, 10);
  ASSERT_EQ(frames.size(), 10u);
  for (const auto& f : frames) EXPECT_TRUE(fs::exists(f));
  const double t0 = t.snapshots.front().time, t1 = t.snapshots.back().time;
  EXPECT_EQ(io::polygon_at_time(t, t0), testing::arrowhead());
  EXPECT_TRUE(is_convex(io::polygon_at_time(t, t1)));
  const io::Viewport view = io::viewport_for(t.final_polygon());
  EXPECT_EQ(io::read_text(frames.front()), io::polygon_svg(testing::arrowhead(), view));
  EXPECT_EQ(io::read_text(frames.back()), io::polygon_svg(t.final_polygon(), view));
}

TEST(Viewport, MarginOnEverySide) {
  const io::Viewport v = io::viewport_for(testing::scaled(testing::unit_square(), 2));
  EXPECT_DOUBLE_EQ(v.min_x, -0.1);
  EXPECT_DOUBLE_EQ(v.min_y, -0.1);
  EXPECT_DOUBLE_EQ(v.width, 2.2);
  EXPECT_DOUBLE_EQ(v.height, 2.2);
}

}  // namespace
}  // namespace convexify
