// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "convexify/geom.hpp"

namespace convexify {

using Velocities = std::vector<Point2>;

/// A polygon whose cyclic edges are bars (length fixed) together with a set
/// of struts (vertex pairs whose distance may only grow).
class Framework {
 public:
  /// Struts are normalized to i < j, sorted, deduplicated. Throws InputError
  /// on out-of-range indices, loops (i, i), or pairs that coincide with a bar.
  Framework(Polygon polygon, std::vector<IndexPair> struts);

  const Polygon& polygon() const noexcept { return polygon_; }
  const std::vector<IndexPair>& struts() const noexcept { return struts_; }
  std::size_t vertex_count() const noexcept { return polygon_.size(); }
  std::size_t bar_count() const noexcept { return polygon_.size(); }
  std::size_t strut_count() const noexcept { return struts_.size(); }
  /// Bar k joins vertex k to vertex k + 1 (cyclically).
  IndexPair bar(std::size_t k) const { return {k, polygon_.next(k)}; }

 private:
  Polygon polygon_;
  std::vector<IndexPair> struts_;
};

/// Rows: bars, then struts. Columns: (x, y) velocity per vertex.
struct RigidityMatrix {
  Eigen::MatrixXd matrix;
  std::vector<IndexPair> pairs;
  std::size_t bar_rows = 0;
};

RigidityMatrix build_rigidity_matrix(const Framework& f);

/// Flatten per-vertex vectors into (x0, y0, x1, y1, ...).
Eigen::VectorXd flatten(const std::vector<Point2>& v);
std::vector<Point2> unflatten(const Eigen::VectorXd& v);

/// Multipliers on the framework's pairs: omega on bars (any sign) and t on
/// struts (nonnegative for a blocking certificate).
struct StressCertificate {
  Eigen::VectorXd omega;
  Eigen::VectorXd t;

  double norm() const { return t.lpNorm<1>(); }
  /// Signed stress in rigidity-matrix row order.
  Eigen::VectorXd stacked() const;
};

/// Vertex i receives sum_j sigma_ij (p_i - p_j): the transpose of the rigidity
/// matrix applied to the stress.
std::vector<Point2> apply_stress_load(const Framework& f, const StressCertificate& s);

struct EquilibriumReport {
  bool equilibrium = false;
  bool trivially_zero = false;
  double max_load = 0.0;
  explicit operator bool() const { return equilibrium; }
};

EquilibriumReport is_equilibrium_stress(const Framework& f, const StressCertificate& s,
                                        double tol);

enum class Dichotomy { Convex, OnBoundary, Violation };

const char* to_string(Dichotomy d);

/// For a blocking stress: the polygon is convex, or every stressed strut lies
/// along the polygon boundary; anything else flags an invalid certificate.
/// Throws InputError when s is not a nonzero nonnegative equilibrium stress.
Dichotomy blocked_stress_dichotomy_check(const Framework& f, const StressCertificate& s,
                                         const ToleranceProfile& tol);

}  // namespace convexify
