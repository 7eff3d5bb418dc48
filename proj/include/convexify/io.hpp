// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convexify/error.hpp"
#include "convexify/expansion.hpp"
#include "convexify/flow.hpp"
#include "convexify/lift.hpp"

namespace convexify::io {

/// Malformed document. offset() is the byte position the reader stopped at,
/// or npos when the problem is structural rather than lexical.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr int kFormatVersion = 1;

struct PolygonMetadata {
  std::string name;
  std::string source;  ///< curve spec the polygon came from, if any
  std::optional<std::size_t> n;

  friend bool operator==(const PolygonMetadata&, const PolygonMetadata&) = default;
};

struct PolygonDocument {
  Polygon polygon;
  PolygonMetadata metadata;
};

std::string polygon_to_json(const Polygon& p, const PolygonMetadata& meta = {});
PolygonDocument parse_polygon(std::string_view text);
PolygonDocument read_polygon(const std::filesystem::path& path);
void write_polygon(const Polygon& p, const std::filesystem::path& path,
                   const PolygonMetadata& meta = {});

/// Polygon, strut list and an optional stress (omega per bar, t per strut).
struct FrameworkDocument {
  Framework framework;
  std::optional<StressCertificate> stress;
};

std::string framework_to_json(const Framework& f, const StressCertificate* stress = nullptr);
FrameworkDocument parse_framework(std::string_view text);
FrameworkDocument read_framework(const std::filesystem::path& path);

/// The result document embeds the framework, so a Blocked result can be fed
/// straight to the lift command.
std::string expansion_result_to_json(const ExpansionProblem& problem, const ExpansionResult& r,
                                     const ToleranceProfile& tol);

std::string lift_to_json(const PlanarEmbedding& e, const Lift& lift, const LiftReport& report);

std::string trajectory_report_to_json(const TrajectoryReport& r);

/// Trajectory CSV: '#' header lines echoing tolerances, configuration and
/// outcome, then one "V" row per (snapshot, vertex) and one "D" row per
/// snapshot. Numbers use 17 significant digits.
struct TrajectoryDocument {
  Trajectory trajectory;
  ToleranceProfile tol;
  FlowConfig config;  ///< echo only; the callback is never restored
};

void write_trajectory_csv(const Trajectory& traj, const FlowConfig& cfg, std::ostream& out);
void emit_trajectory_csv(const Trajectory& traj, const FlowConfig& cfg,
                         const std::filesystem::path& path);
TrajectoryDocument parse_trajectory_csv(std::istream& in);
TrajectoryDocument read_trajectory_csv(const std::filesystem::path& path);

struct Viewport {
  double min_x = 0.0;
  double min_y = 0.0;
  double width = 1.0;
  double height = 1.0;
};

/// Bounding box of p grown by `margin` times its larger side on every side.
Viewport viewport_for(const Polygon& p, double margin = 0.05);
std::string polygon_svg(const Polygon& p, const Viewport& view);

/// Positions at time `time`, interpolated linearly between the snapshots
/// bracketing it.
Polygon polygon_at_time(const Trajectory& traj, double time);

/// frame_count frames evenly spaced in trajectory time, all drawn in the
/// final snapshot's viewport. Returns the written paths (frame_0000.svg, ...).
std::vector<std::filesystem::path> emit_svg_frames(const Trajectory& traj,
                                                   const std::filesystem::path& dir,
                                                   std::size_t frame_count);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace convexify::io
