// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "convexify/geom.hpp"
#include "convexify/rigidity.hpp"

namespace convexify {

/// A stressed planar framework with caller-supplied faces. Bounded faces are
/// counterclockwise vertex cycles; the outer face is listed clockwise, so
/// every face lies to the left of its own boundary walk.
struct PlanarEmbedding {
  struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double stress = 0.0;
  };

  std::vector<Point2> vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> faces;
  std::size_t outer_face = 0;

  /// Checks index ranges, that each edge borders exactly two faces with
  /// opposite walking directions, face orientations, and V - E + F = 2.
  void validate() const;
  /// Per-vertex load sum_j sigma_ij (p_i - p_j).
  std::vector<Point2> loads() const;
};

/// value(x, y) = gx * x + gy * y + offset on one face.
struct AffineFace {
  double gx = 0.0;
  double gy = 0.0;
  double offset = 0.0;

  double operator()(const Point2& p) const { return gx * p.x + gy * p.y + offset; }
};

struct Lift {
  std::vector<AffineFace> faces;  ///< indexed like PlanarEmbedding::faces
};

enum class DualTraversal { BreadthFirst, DepthFirst, ReverseBreadthFirst };

/// Discrete Maxwell-Cremona lifting: the outer face is pinned to zero and,
/// walking i -> j with face L on the left and R on the right,
/// grad(L) - grad(R) = sigma_ij * rot90(p_j - p_i). Throws InputError when
/// the stress is not in equilibrium, NumericalError when the propagated lift
/// is inconsistent around some cycle.
Lift maxwell_lift(const PlanarEmbedding& e, double tol = 1e-9,
                  DualTraversal order = DualTraversal::BreadthFirst);

struct LiftReport {
  double max_continuity = 0.0;  ///< face values disagreeing at edge endpoints
  double max_jump = 0.0;        ///< gradient jump error across edges
  double outer_value = 0.0;     ///< magnitude of the outer face coefficients
  std::vector<std::string> violations;
  bool pass = false;
};

/// Planar embedding of a stressed framework. Crossing members are split at
/// their intersections (points closer than snap_tol merge) and each piece
/// carries the stress that exerts the member's original pull; collinear
/// overlaps add up. The outer face is the one of largest negative area.
PlanarEmbedding embed_framework(const Framework& f, const StressCertificate& s,
                                double snap_tol = 1e-12);

LiftReport verify_lift(const PlanarEmbedding& e, const Lift& lift, double tol);

}  // namespace convexify
