// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "convexify/geom.hpp"

namespace convexify {

/// Planar subdivision induced by the edges of a (possibly self-crossing)
/// polygon. Input vertices take the first ids, crossing points follow in
/// discovery order.
struct Arrangement {
  struct Face {
    std::vector<std::size_t> cycle;  ///< vertex ids, face on the left
    double area = 0.0;               ///< signed; bounded faces are positive
  };

  std::vector<Point2> vertices;
  std::vector<IndexPair> edges;  ///< undirected, deduplicated
  std::vector<Face> faces;
};

/// Faces of a planar straight-line graph, each traced with the face on its
/// left, so bounded faces come out counterclockwise and the outer one
/// clockwise. Edges are undirected and must not cross.
std::vector<Arrangement::Face> trace_faces(const std::vector<Point2>& pts,
                                           const std::vector<IndexPair>& edges);

/// Points closer than snap_tol are merged; the tolerance is absolute.
Arrangement build_arrangement(const Polygon& p, double snap_tol);

/// Returns p itself when simple. Otherwise returns the counterclockwise
/// boundary of the greatest-area bounded face of p's arrangement, starting
/// at its lowest vertex id; area ties go to the face holding the lowest id.
/// Throws NumericalError when every bounded face is degenerate.
Polygon repair_to_simple(const Polygon& p, const ToleranceProfile& tol = {});

}  // namespace convexify
