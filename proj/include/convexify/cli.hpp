// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "convexify/expansion.hpp"
#include "convexify/flow.hpp"

namespace convexify::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,    ///< blocked while nonconvex, or a verification failed
  kUsage = 2,      ///< bad arguments or invalid input documents
  kNumerical = 3,  ///< solver or integrator breakdown
};

/// Expansion and convex Blocked results succeed; Blocked on a nonconvex
/// polygon fails.
int exit_code(const ExpansionResult& r, const Polygon& p, const ToleranceProfile& tol);

/// Converged succeeds, as does MaxSteps when the run was asked to stop there.
/// Blocked fails; StepUnderflow, NumericalFailure and an unrequested
/// MaxSteps are numerical breakdowns.
int exit_code(const Trajectory& traj, StopMode mode);

/// Subcommands: catalog, inscribe, expand, unfold, lift, verify. Documents go
/// to the -o path (standard output when omitted); a one-line summary goes to
/// `out` when a path is given. CONVEXIFY_LOG=debug|info|quiet controls
/// progress lines on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace convexify::cli
