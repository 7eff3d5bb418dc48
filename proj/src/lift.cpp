// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/lift.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

#include "convexify/arrangement.hpp"
#include "convexify/error.hpp"

namespace convexify {

namespace {

using DirectedFaces = std::map<IndexPair, std::size_t>;

DirectedFaces directed_faces(const PlanarEmbedding& e) {
  DirectedFaces out;
  for (std::size_t f = 0; f < e.faces.size(); ++f) {
    const auto& cyc = e.faces[f];
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const IndexPair h{cyc[k], cyc[(k + 1) % cyc.size()]};
      if (!out.emplace(h, f).second) {
        throw InputError("directed edge (" + std::to_string(h.first) + ", " +
                         std::to_string(h.second) + ") is walked by two faces");
      }
    }
  }
  return out;
}

double face_area(const PlanarEmbedding& e, const std::vector<std::size_t>& cyc) {
  double twice = 0.0;
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    twice += cross(e.vertices[cyc[k]], e.vertices[cyc[(k + 1) % cyc.size()]]);
  }
  return 0.5 * twice;
}

struct EdgeFaces {
  std::size_t left;   // face left of i -> j
  std::size_t right;  // face left of j -> i
};

std::vector<EdgeFaces> edge_faces(const PlanarEmbedding& e) {
  const auto dir = directed_faces(e);
  std::vector<EdgeFaces> out;
  out.reserve(e.edges.size());
  for (const auto& ed : e.edges) {
    const auto l = dir.find({ed.i, ed.j});
    const auto r = dir.find({ed.j, ed.i});
    if (l == dir.end() || r == dir.end()) {
      throw InputError("edge (" + std::to_string(ed.i) + ", " + std::to_string(ed.j) +
                       ") does not border two faces");
    }
    out.push_back({l->second, r->second});
  }
  return out;
}

Point2 jump(const PlanarEmbedding& e, const PlanarEmbedding::Edge& ed) {
  return ed.stress * rot90(e.vertices[ed.j] - e.vertices[ed.i]);
}

}  // namespace

void PlanarEmbedding::validate() const {
  const std::size_t nv = vertices.size();
  for (const auto& v : vertices) {
    if (!is_finite(v)) throw InputError("embedding vertex is not finite");
  }
  if (faces.empty() || outer_face >= faces.size()) {
    throw InputError("embedding outer face index is out of range");
  }
  std::map<IndexPair, int> undirected;
  for (const auto& ed : edges) {
    if (ed.i >= nv || ed.j >= nv || ed.i == ed.j) {
      throw InputError("embedding edge (" + std::to_string(ed.i) + ", " + std::to_string(ed.j) +
                       ") is invalid");
    }
    if (!std::isfinite(ed.stress)) throw InputError("embedding stress is not finite");
    if (++undirected[{std::min(ed.i, ed.j), std::max(ed.i, ed.j)}] > 1) {
      throw InputError("embedding edge listed twice");
    }
  }
  for (const auto& cyc : faces) {
    if (cyc.size() < 3) throw InputError("embedding face has fewer than 3 vertices");
    for (std::size_t v : cyc) {
      if (v >= nv) throw InputError("embedding face references a missing vertex");
    }
  }
  const auto dir = directed_faces(*this);
  if (dir.size() != 2 * edges.size()) {
    throw InputError("face boundaries do not match the edge list");
  }
  for (const auto& [h, f] : dir) {
    if (!undirected.count({std::min(h.first, h.second), std::max(h.first, h.second)})) {
      throw InputError("face walks a pair that is not an edge");
    }
  }
  edge_faces(*this);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const double a = face_area(*this, faces[f]);
    if (f == outer_face ? a >= 0.0 : a <= 0.0) {
      throw InputError("face " + std::to_string(f) + " has the wrong orientation");
    }
  }
  const long euler = static_cast<long>(nv) - static_cast<long>(edges.size()) +
                     static_cast<long>(faces.size());
  if (euler != 2) {
    throw InputError("embedding violates V - E + F = 2 (got " + std::to_string(euler) + ")");
  }
}

std::vector<Point2> PlanarEmbedding::loads() const {
  std::vector<Point2> out(vertices.size());
  for (const auto& ed : edges) {
    const Point2 d = ed.stress * (vertices[ed.i] - vertices[ed.j]);
    out[ed.i] += d;
    out[ed.j] -= d;
  }
  return out;
}

Lift maxwell_lift(const PlanarEmbedding& e, double tol, DualTraversal order) {
  e.validate();
  double max_load = 0.0;
  for (const auto& l : e.loads()) max_load = std::max(max_load, norm(l));
  if (max_load > tol) {
    throw InputError("stress is not in equilibrium (max vertex load " + std::to_string(max_load) +
                     ")");
  }
  const auto ef = edge_faces(e);
  std::vector<std::vector<std::size_t>> dual(e.faces.size());  // edge ids per face
  for (std::size_t k = 0; k < e.edges.size(); ++k) {
    dual[ef[k].left].push_back(k);
    dual[ef[k].right].push_back(k);
  }
  if (order == DualTraversal::ReverseBreadthFirst) {
    for (auto& list : dual) std::reverse(list.begin(), list.end());
  }

  Lift lift;
  lift.faces.assign(e.faces.size(), AffineFace{});
  std::vector<bool> seen(e.faces.size(), false);
  std::deque<std::size_t> frontier{e.outer_face};
  seen[e.outer_face] = true;
  while (!frontier.empty()) {
    std::size_t f;
    if (order == DualTraversal::DepthFirst) {
      f = frontier.back();
      frontier.pop_back();
    } else {
      f = frontier.front();
      frontier.pop_front();
    }
    for (std::size_t k : dual[f]) {
      const auto& ed = e.edges[k];
      const bool f_is_left = ef[k].left == f;
      const std::size_t g = f_is_left ? ef[k].right : ef[k].left;
      if (seen[g]) continue;
      const Point2 j = f_is_left ? -jump(e, ed) : jump(e, ed);
      const AffineFace& from = lift.faces[f];
      AffineFace& to = lift.faces[g];
      to.gx = from.gx + j.x;
      to.gy = from.gy + j.y;
      // Agree with `from` on the line through p_i (and so through p_j).
      to.offset = from.offset - dot(j, e.vertices[ed.i]);
      seen[g] = true;
      frontier.push_back(g);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("embedding dual graph is disconnected");
  }
  const auto report = verify_lift(e, lift, std::max(tol, 1e-9));
  if (!report.pass) {
    throw NumericalError("lift is inconsistent around a dual cycle: " + report.violations.front());
  }
  return lift;
}

PlanarEmbedding embed_framework(const Framework& f, const StressCertificate& s, double snap_tol) {
  const Eigen::VectorXd sigma = [&] {
    if (static_cast<std::size_t>(s.omega.size()) != f.bar_count() ||
        static_cast<std::size_t>(s.t.size()) != f.strut_count()) {
      throw InputError("stress does not match the framework's bars and struts");
    }
    return s.stacked();
  }();
  const RigidityMatrix rm = build_rigidity_matrix(f);
  const Polygon& p = f.polygon();

  std::vector<Point2> pts(p.vertices().begin(), p.vertices().end());
  auto intern = [&](const Point2& q) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (distance(pts[i], q) <= snap_tol) return i;
    }
    pts.push_back(q);
    return pts.size() - 1;
  };
  const std::size_t members = rm.pairs.size();
  for (std::size_t a = 0; a < members; ++a) {
    const Point2 pa = p[rm.pairs[a].first], pb = p[rm.pairs[a].second];
    for (std::size_t b = a + 1; b < members; ++b) {
      const Point2 pc = p[rm.pairs[b].first], pd = p[rm.pairs[b].second];
      const Point2 r = pb - pa, q = pd - pc;
      const double denom = cross(r, q);
      if (denom == 0.0) continue;
      const double u = cross(pc - pa, q) / denom;
      const double w = cross(pc - pa, r) / denom;
      if (u > 0.0 && u < 1.0 && w > 0.0 && w < 1.0) intern(pa + u * r);
    }
  }

  std::map<IndexPair, double> pieces;
  for (std::size_t m = 0; m < members; ++m) {
    const Point2 a = p[rm.pairs[m].first], b = p[rm.pairs[m].second];
    const Point2 ab = b - a;
    const double len = norm(ab);
    std::vector<std::pair<double, std::size_t>> on;
    for (std::size_t v = 0; v < pts.size(); ++v) {
      if (point_segment_distance(pts[v], a, b) <= snap_tol) {
        on.emplace_back(dot(pts[v] - a, ab) / (len * len), v);
      }
    }
    std::sort(on.begin(), on.end());
    for (std::size_t k = 0; k + 1 < on.size(); ++k) {
      const std::size_t u = on[k].second, w = on[k + 1].second;
      if (u == w) continue;
      const double part = distance(pts[u], pts[w]);
      pieces[{std::min(u, w), std::max(u, w)}] += sigma(static_cast<Eigen::Index>(m)) * len / part;
    }
  }

  PlanarEmbedding e;
  e.vertices = pts;
  std::vector<IndexPair> edges;
  for (const auto& [key, stress] : pieces) {
    e.edges.push_back({key.first, key.second, stress});
    edges.push_back(key);
  }
  double most_negative = 0.0;
  for (auto& face : trace_faces(pts, edges)) {
    if (face.area < most_negative) {
      most_negative = face.area;
      e.outer_face = e.faces.size();
    }
    e.faces.push_back(std::move(face.cycle));
  }
  e.validate();
  return e;
}

LiftReport verify_lift(const PlanarEmbedding& e, const Lift& lift, double tol) {
  LiftReport rep;
  if (lift.faces.size() != e.faces.size()) {
    rep.violations.push_back("lift covers " + std::to_string(lift.faces.size()) + " of " +
                             std::to_string(e.faces.size()) + " faces");
    return rep;
  }
  const auto ef = edge_faces(e);
  for (std::size_t k = 0; k < e.edges.size(); ++k) {
    const auto& ed = e.edges[k];
    const AffineFace& l = lift.faces[ef[k].left];
    const AffineFace& r = lift.faces[ef[k].right];
    const Point2& pi = e.vertices[ed.i];
    const Point2& pj = e.vertices[ed.j];
    const double cont = std::max(std::abs(l(pi) - r(pi)), std::abs(l(pj) - r(pj)));
    const Point2 want = jump(e, ed);
    const double jmp = norm(Point2{l.gx - r.gx, l.gy - r.gy} - want);
    rep.max_continuity = std::max(rep.max_continuity, cont);
    rep.max_jump = std::max(rep.max_jump, jmp);
    if (cont > tol) {
      std::ostringstream os;
      os << "continuity violated on edge (" << ed.i << ", " << ed.j << "): " << cont;
      rep.violations.push_back(os.str());
    }
    if (jmp > tol) {
      std::ostringstream os;
      os << "gradient jump violated on edge (" << ed.i << ", " << ed.j << "): " << jmp;
      rep.violations.push_back(os.str());
    }
  }
  const AffineFace& outer = lift.faces[e.outer_face];
  rep.outer_value = std::abs(outer.gx) + std::abs(outer.gy) + std::abs(outer.offset);
  if (rep.outer_value > tol) rep.violations.push_back("outer face is not the zero map");
  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace convexify
