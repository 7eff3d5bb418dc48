// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "convexify/expansion.hpp"

namespace convexify {

enum class StopMode { Convex, MaxSteps };

const char* to_string(StopMode m);
StopMode parse_stop_mode(const std::string& name);

struct StepDiagnostics;

struct FlowConfig {
  double h0 = 1e-3;
  double min_step = 1e-12;
  double max_step = 0.05;
  std::size_t max_steps = 5000;
  ToleranceProfile tol{};
  StrutRule strut_rule = StrutRule::Nonadjacent;
  StopMode stop_mode = StopMode::Convex;
  /// Blocked threshold for the flow's own LP solves, which run on the
  /// polygon scaled to unit extent. Near convexity the margin shrinks with
  /// the last reflex turn while the velocities stay O(1).
  double lp_blocked_tol = 1e-12;
  double projection_tol = 1e-11;     ///< edge-length residual after each step
  std::size_t projection_sweeps = 500;
  std::function<void(const StepDiagnostics&)> on_step;  ///< called after each accepted step

  void validate() const;
};

/// Diagnostics describing how snapshot `step` was produced. The entry for
/// the initial snapshot has h = eps = 0.
struct StepDiagnostics {
  std::size_t step = 0;
  double time = 0.0;
  double h = 0.0;
  double eps = 0.0;
  double energy = 0.0;            ///< interdistance functional
  double max_bar_residual = 0.0;  ///< max |edge length - original length|
  double min_strut_slack = 0.0;   ///< min over nonadjacent pairs of distance gained
  bool simple = true;
  std::size_t locked = 0;         ///< straight vertices carried rigidly
  std::size_t retries = 0;        ///< step halvings before acceptance
};

enum class FlowStatus { Converged, Blocked, StepUnderflow, MaxSteps, NumericalFailure };

const char* to_string(FlowStatus s);

struct Snapshot {
  double time = 0.0;
  Polygon polygon;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;  ///< one per snapshot
  FlowStatus status = FlowStatus::MaxSteps;
  std::string message;

  bool success() const noexcept { return status == FlowStatus::Converged; }
  const Polygon& final_polygon() const { return snapshots.back().polygon; }
  /// Times strictly increasing, equal vertex counts, diagnostics aligned.
  void validate() const;
};

/// Cyclic Gauss-Seidel sweep moving both endpoints of each edge symmetrically
/// toward its target length. Throws ConvergenceError carrying the residual
/// when max_sweeps pass without reaching tol.
Polygon project_edge_lengths(const Polygon& p, const std::vector<double>& targets, double tol,
                             std::size_t max_sweeps = 500);

/// Euler update p + h v followed by projection onto `targets`.
Polygon step(const Polygon& p, const Velocities& v, double h, const std::vector<double>& targets,
             double tol = 1e-11, std::size_t max_sweeps = 500);

/// Adaptive expansive flow until convex. Straight vertices (present at the
/// start or reached mid-flow) can no longer bend under an expansive motion;
/// they are carried rigidly on the chord of their nearest bending neighbours
/// and the LP runs on the remaining vertices. Failures are reported through
/// the trajectory status, never thrown, except for invalid input.
Trajectory unfold(const Polygon& p, const FlowConfig& cfg = {});

struct TrajectoryReport {
  double max_length_drift = 0.0;
  double worst_dominance = 0.0;  ///< largest distance decrease between any two snapshots
  std::size_t first_nonsimple = 0;
  bool lengths_ok = false;
  bool dominance_ok = false;
  bool simple_ok = false;
  bool convex_ok = false;        ///< vacuous when success is not claimed
  std::vector<std::string> violations;
  bool pass = false;
};

TrajectoryReport verify_trajectory(const Trajectory& traj, const ToleranceProfile& tol);

/// Frames on a uniform grid in [0, 1] at which the interdistance functional
/// is affine in time; positions interpolate linearly between neighbouring
/// snapshots. frame_count = 0 keeps the snapshot count. Throws InputError
/// unless the functional is strictly increasing.
Trajectory reparameterize_by_E(const Trajectory& traj, std::size_t frame_count = 0);

}  // namespace convexify
