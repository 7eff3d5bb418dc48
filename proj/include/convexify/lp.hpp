// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace convexify::lp {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// minimize c'x  subject to  A x (sense) b,  x_j >= 0 unless free[j].
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<RowSense> sense;
  Eigen::VectorXd c;
  std::vector<bool> free;  ///< empty means every variable is nonnegative

  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::IterationLimit;
  Eigen::VectorXd x;
  /// Row multipliers y = c_B' B^-1 expressed on the original rows, so that
  /// objective = b'y at optimality and c - A'y is the reduced-cost vector.
  Eigen::VectorXd duals;
  double objective = 0.0;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;     ///< smallest admissible pivot magnitude
  double cost_tol = 1e-11;     ///< reduced cost treated as nonnegative
  double feasibility_tol = 1e-9;
  double perturbation = 1e-8;  ///< relative right-hand-side shift while pivoting; 0 disables
  std::size_t max_iterations = 200000;
};

/// Two-phase dense tableau simplex. Dantzig pricing falls back to Bland's
/// smallest-index rule after a run of degenerate pivots; the right-hand side
/// is perturbed while pivoting and restored exactly before extraction.
Solution solve(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace convexify::lp
