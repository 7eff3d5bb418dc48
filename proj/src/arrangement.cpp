// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "convexify/error.hpp"

namespace convexify {

namespace {

class VertexPool {
 public:
  explicit VertexPool(double snap) : snap_(snap) {}

  std::size_t intern(const Point2& p) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (distance(points_[i], p) <= snap_) return i;
    }
    points_.push_back(p);
    return points_.size() - 1;
  }

  const std::vector<Point2>& points() const { return points_; }

 private:
  double snap_;
  std::vector<Point2> points_;
};

std::optional<Point2> proper_crossing(const Point2& a, const Point2& b, const Point2& c,
                                      const Point2& d) {
  const Point2 r = b - a;
  const Point2 s = d - c;
  const double denom = cross(r, s);
  if (denom == 0.0) return std::nullopt;
  const double t = cross(c - a, s) / denom;
  const double u = cross(c - a, r) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return a + t * r;
}

double cycle_area(const std::vector<Point2>& pts, const std::vector<std::size_t>& cycle) {
  double twice = 0.0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    twice += cross(pts[cycle[k]], pts[cycle[(k + 1) % cycle.size()]]);
  }
  return 0.5 * twice;
}

}  // namespace

std::vector<Arrangement::Face> trace_faces(const std::vector<Point2>& pts,
                                           const std::vector<IndexPair>& edges) {
  std::vector<std::vector<std::size_t>> adj(pts.size());
  for (const auto& [u, w] : edges) {
    if (u >= pts.size() || w >= pts.size()) throw InputError("edge references a missing vertex");
    adj[u].push_back(w);
    adj[w].push_back(u);
  }
  // Outgoing edges sorted counterclockwise by angle; the successor of u->v
  // is the edge at v just clockwise of v->u, which keeps the face on the left.
  for (std::size_t v = 0; v < pts.size(); ++v) {
    std::sort(adj[v].begin(), adj[v].end(), [&](std::size_t a, std::size_t b) {
      const Point2 da = pts[a] - pts[v];
      const Point2 db = pts[b] - pts[v];
      return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
    });
  }
  std::vector<Arrangement::Face> faces;
  std::set<IndexPair> visited;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    for (std::size_t w : adj[v]) {
      if (visited.count({v, w})) continue;
      Arrangement::Face face;
      std::size_t u = v, x = w;
      while (!visited.count({u, x})) {
        visited.insert({u, x});
        face.cycle.push_back(u);
        const auto& around = adj[x];
        const auto pos = static_cast<std::size_t>(
            std::find(around.begin(), around.end(), u) - around.begin());
        const std::size_t nxt = around[(pos + around.size() - 1) % around.size()];
        u = x;
        x = nxt;
      }
      face.area = cycle_area(pts, face.cycle);
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

Arrangement build_arrangement(const Polygon& p, double snap_tol) {
  const std::size_t n = p.size();
  VertexPool pool(snap_tol);
  for (std::size_t i = 0; i < n; ++i) pool.intern(p[i]);

  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = p[i];
    const Point2& b = p[p.next(i)];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point2& c = p[j];
      const Point2& d = p[p.next(j)];
      if (auto x = proper_crossing(a, b, c, d)) {
        pool.intern(*x);
      }
      // Collinear overlaps and touching configurations are captured below by
      // the on-segment scan of every pooled vertex.
    }
  }

  const auto& pts = pool.points();
  std::set<IndexPair> edge_set;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = p[i];
    const Point2& b = p[p.next(i)];
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    std::vector<std::pair<double, std::size_t>> on_edge;
    for (std::size_t v = 0; v < pts.size(); ++v) {
      if (point_segment_distance(pts[v], a, b) <= snap_tol) {
        on_edge.emplace_back(dot(pts[v] - a, ab) / len2, v);
      }
    }
    std::sort(on_edge.begin(), on_edge.end());
    for (std::size_t k = 0; k + 1 < on_edge.size(); ++k) {
      const std::size_t u = on_edge[k].second;
      const std::size_t w = on_edge[k + 1].second;
      if (u != w) edge_set.insert({std::min(u, w), std::max(u, w)});
    }
  }

  // Strip dangling chains left by collinear overlaps.
  std::vector<std::vector<std::size_t>> adj(pts.size());
  for (const auto& [u, w] : edge_set) {
    adj[u].push_back(w);
    adj[w].push_back(u);
  }
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (std::size_t v = 0; v < pts.size(); ++v) {
      if (adj[v].size() == 1) {
        const std::size_t w = adj[v][0];
        adj[v].clear();
        std::erase(adj[w], v);
        pruned = true;
      }
    }
  }

  Arrangement out;
  out.vertices = pts;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    for (std::size_t w : adj[v]) {
      if (v < w) out.edges.emplace_back(v, w);
    }
  }

  out.faces = trace_faces(pts, out.edges);
  return out;
}

namespace {

// Split a boundary walk that revisits a vertex and keep the larger lobe.
std::vector<std::size_t> largest_simple_lobe(const std::vector<Point2>& pts,
                                             std::vector<std::size_t> cycle) {
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> repeat;
    for (std::size_t a = 0; a < cycle.size() && !repeat; ++a) {
      for (std::size_t b = a + 1; b < cycle.size(); ++b) {
        if (cycle[a] == cycle[b]) {
          repeat.emplace(a, b);
          break;
        }
      }
    }
    if (!repeat) return cycle;
    const auto [a, b] = *repeat;
    std::vector<std::size_t> inner(cycle.begin() + static_cast<std::ptrdiff_t>(a),
                                   cycle.begin() + static_cast<std::ptrdiff_t>(b));
    std::vector<std::size_t> outer(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(a));
    outer.insert(outer.end(), cycle.begin() + static_cast<std::ptrdiff_t>(b), cycle.end());
    cycle = cycle_area(pts, inner) >= cycle_area(pts, outer) ? std::move(inner) : std::move(outer);
  }
}

void drop_straight_vertices(const std::vector<Point2>& pts, std::vector<std::size_t>& cycle,
                            double geom_tol) {
  bool changed = true;
  while (changed && cycle.size() > 3) {
    changed = false;
    for (std::size_t k = 0; k < cycle.size() && cycle.size() > 3; ++k) {
      const Point2& prev = pts[cycle[(k + cycle.size() - 1) % cycle.size()]];
      const Point2& cur = pts[cycle[k]];
      const Point2& next = pts[cycle[(k + 1) % cycle.size()]];
      const Point2 in = cur - prev;
      const Point2 out = next - cur;
      const double s = cross(in, out) / (norm(in) * norm(out));
      if (std::abs(s) <= geom_tol && dot(in, out) > 0.0) {
        cycle.erase(cycle.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
      }
    }
  }
}

}  // namespace

Polygon repair_to_simple(const Polygon& p, const ToleranceProfile& tol) {
  if (is_simple(p, tol.geom_tol)) return p;
  const double scale = p.extent();
  const Arrangement arr = build_arrangement(p, tol.geom_tol * scale);

  const Arrangement::Face* best = nullptr;
  std::size_t best_seed = 0;
  for (const auto& face : arr.faces) {
    if (face.area <= 0.0) continue;
    const std::size_t seed = *std::min_element(face.cycle.begin(), face.cycle.end());
    if (!best) {
      best = &face;
      best_seed = seed;
      continue;
    }
    const double slack = tol.geom_tol * std::max(face.area, best->area);
    if (face.area > best->area + slack ||
        (std::abs(face.area - best->area) <= slack && seed < best_seed)) {
      best = &face;
      best_seed = seed;
    }
  }
  if (!best || best->area <= tol.geom_tol * scale * scale) {
    throw NumericalError("repair_to_simple: every bounded face is degenerate");
  }

  auto cycle = largest_simple_lobe(arr.vertices, best->cycle);
  drop_straight_vertices(arr.vertices, cycle, tol.geom_tol);
  if (cycle_area(arr.vertices, cycle) < 0.0) std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());

  std::vector<Point2> pts;
  pts.reserve(cycle.size());
  for (std::size_t id : cycle) pts.push_back(arr.vertices[id]);
  Polygon out(std::move(pts));
  if (!is_simple(out, tol.geom_tol)) {
    throw NumericalError("repair_to_simple: extracted face boundary is not simple");
  }
  return out;
}

}  // namespace convexify
