// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "convexify/curves.hpp"
#include "convexify/error.hpp"

namespace convexify {

const char* to_string(StopMode m) { return m == StopMode::Convex ? "convex" : "max_steps"; }

StopMode parse_stop_mode(const std::string& name) {
  if (name == "convex") return StopMode::Convex;
  if (name == "max_steps") return StopMode::MaxSteps;
  throw InputError("unknown stop mode '" + name + "'");
}

const char* to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::Converged: return "Converged";
    case FlowStatus::Blocked: return "Blocked";
    case FlowStatus::StepUnderflow: return "StepUnderflow";
    case FlowStatus::MaxSteps: return "MaxSteps";
    case FlowStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

void FlowConfig::validate() const {
  tol.validate();
  if (!(min_step > 0.0 && min_step <= h0 && h0 <= max_step && std::isfinite(max_step))) {
    throw InputError("flow steps must satisfy 0 < min_step <= h0 <= max_step");
  }
  if (max_steps == 0) throw InputError("max_steps must be positive");
  if (!(lp_blocked_tol > 0.0)) throw InputError("lp_blocked_tol must be positive");
  if (!(projection_tol > 0.0) || projection_sweeps == 0) {
    throw InputError("projection tolerance and sweep budget must be positive");
  }
}

void Trajectory::validate() const {
  if (snapshots.empty()) throw InputError("trajectory has no snapshots");
  if (diagnostics.size() != snapshots.size()) {
    throw InputError("trajectory diagnostics are not aligned with snapshots");
  }
  const std::size_t n = snapshots.front().polygon.size();
  for (std::size_t k = 1; k < snapshots.size(); ++k) {
    if (snapshots[k].polygon.size() != n) throw InputError("trajectory vertex counts differ");
    if (!(snapshots[k].time > snapshots[k - 1].time)) {
      throw InputError("trajectory times are not strictly increasing");
    }
  }
}

namespace {

double max_length_residual(const Polygon& p, const std::vector<double>& targets) {
  double worst = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    worst = std::max(worst, std::abs(norm(p.edge(k)) - targets[k]));
  }
  return worst;
}

}  // namespace

Polygon project_edge_lengths(const Polygon& p, const std::vector<double>& targets, double tol,
                             std::size_t max_sweeps) {
  const std::size_t n = p.size();
  if (targets.size() != n) throw InputError("projection needs one target per edge");
  for (double t : targets) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("edge targets must be positive");
  }
  if (max_length_residual(p, targets) <= tol) return p;
  std::vector<Point2> q(p.vertices().begin(), p.vertices().end());
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t k = 0; k < n; ++k) {
      Point2& a = q[k];
      Point2& b = q[(k + 1) % n];
      const Point2 d = b - a;
      const double len = norm(d);
      if (!(len > 0.0)) continue;
      const Point2 corr = (0.5 * (len - targets[k]) / len) * d;
      a += corr;
      b -= corr;
    }
    residual = 0.0;
    bool finite = true;
    for (std::size_t k = 0; k < n; ++k) {
      const double len = distance(q[k], q[(k + 1) % n]);
      finite = finite && std::isfinite(len);
      residual = std::max(residual, std::abs(len - targets[k]));
    }
    if (!finite) break;
    if (residual <= tol) {
      try {
        return Polygon(std::move(q));
      } catch (const InputError&) {
        break;
      }
    }
  }
  std::ostringstream os;
  os << "edge-length projection did not converge (residual " << residual << " after "
     << max_sweeps << " sweeps)";
  throw ConvergenceError(os.str(), residual);
}

Polygon step(const Polygon& p, const Velocities& v, double h, const std::vector<double>& targets,
             double tol, std::size_t max_sweeps) {
  if (!(h > 0.0)) throw InputError("step size must be positive");
  if (v.size() != p.size()) throw InputError("velocity count differs from vertex count");
  std::vector<Point2> q(p.vertices().begin(), p.vertices().end());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += h * v[i];
  Polygon moved = [&] {
    try {
      return Polygon(std::move(q));
    } catch (const InputError& e) {
      throw ConvergenceError(std::string("Euler update degenerated: ") + e.what(),
                             std::numeric_limits<double>::infinity());
    }
  }();
  return project_edge_lengths(moved, targets, tol, max_sweeps);
}

namespace {

// Straight vertices ride on the chord between their nearest bending
// neighbours with fixed chord coordinates (alpha along, beta across).
struct Chains {
  std::vector<std::size_t> unlocked;
  std::vector<double> targets;  // reduced edge k joins unlocked[k], unlocked[k+1]
  struct Rider {
    std::size_t vertex;
    std::size_t chain;
    double alpha;
    double beta;
  };
  std::vector<Rider> riders;
};

Chains build_chains(const Polygon& p, const std::vector<bool>& locked,
                    const std::vector<double>& lengths) {
  Chains c;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!locked[i]) c.unlocked.push_back(i);
  }
  if (c.unlocked.size() < 3) throw NumericalError("fewer than three bending vertices remain");
  const std::size_t m = c.unlocked.size();
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t u = c.unlocked[k];
    const std::size_t w = c.unlocked[(k + 1) % m];
    if (p.next(u) == w) {
      c.targets.push_back(lengths[u]);
      continue;
    }
    const Point2 e = p[w] - p[u];
    const double ee = dot(e, e);
    c.targets.push_back(std::sqrt(ee));
    for (std::size_t i = p.next(u); i != w; i = p.next(i)) {
      const Point2 d = p[i] - p[u];
      c.riders.push_back({i, k, dot(d, e) / ee, dot(d, rot90(e)) / ee});
    }
  }
  return c;
}

Polygon reduced_polygon(const Polygon& p, const Chains& c) {
  std::vector<Point2> r;
  r.reserve(c.unlocked.size());
  for (std::size_t i : c.unlocked) r.push_back(p[i]);
  return Polygon(std::move(r));
}

Polygon place(const Polygon& reduced, const Chains& c, std::size_t n) {
  std::vector<Point2> q(n);
  const std::size_t m = c.unlocked.size();
  for (std::size_t k = 0; k < m; ++k) q[c.unlocked[k]] = reduced[k];
  for (const auto& r : c.riders) {
    const Point2 u = reduced[r.chain];
    const Point2 e = reduced[(r.chain + 1) % m] - u;
    q[r.vertex] = u + r.alpha * e + r.beta * rot90(e);
  }
  return Polygon(std::move(q));
}

// Undo the rigid drift the projection introduces: vertex 0 returns to its
// old place and edge 0 keeps its old direction.
Polygon repin(const Polygon& moved, const Polygon& before) {
  const Point2 a = before[0];
  const Point2 e0 = before[1] - before[0];
  const Point2 e1 = moved[1] - moved[0];
  const double n0 = norm(e0), n1 = norm(e1);
  const double c = dot(e0, e1) / (n0 * n1);
  const double s = cross(e1, e0) / (n0 * n1);
  std::vector<Point2> q(moved.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point2 d = moved[i] - moved[0];
    q[i] = a + Point2{c * d.x - s * d.y, s * d.x + c * d.y};
  }
  return Polygon(std::move(q));
}

// Weight sqrt(slack / d), slack = shorter boundary arc - chord, capped at 1.
// A strut across a nearly straight stretch can only open at a rate
// proportional to its bend, so an unweighted margin collapses there.
std::vector<double> strut_weights(const Polygon& r, const std::vector<IndexPair>& struts) {
  std::vector<double> w;
  w.reserve(struts.size());
  for (const auto& [i, j] : struts) {
    const double d = distance(r[i], r[j]);
    const double arc = std::min(arc_length(r, i, j), arc_length(r, j, i));
    w.push_back(std::clamp(std::sqrt(std::max(arc - d, 0.0) / d), 1e-12, 1.0));
  }
  return w;
}

StepDiagnostics describe(std::size_t k, double time, const Polygon& p,
                         const std::vector<double>& lengths) {
  StepDiagnostics d;
  d.step = k;
  d.time = time;
  d.energy = interdistance_functional(p);
  d.max_bar_residual = max_length_residual(p, lengths);
  d.simple = true;
  return d;
}

}  // namespace

Trajectory unfold(const Polygon& input, const FlowConfig& cfg) {
  cfg.validate();
  const auto& tol = cfg.tol;
  if (!is_simple(input, tol.geom_tol)) throw InputError("unfold needs a simple polygon");
  const std::size_t n = input.size();
  const std::vector<double> lengths = edge_lengths(input);

  Trajectory traj;
  traj.snapshots.push_back({0.0, input});
  traj.diagnostics.push_back(describe(0, 0.0, input, lengths));
  auto finish = [&](FlowStatus s, std::string msg) {
    traj.status = s;
    traj.message = std::move(msg);
    return traj;
  };
  if (is_convex(input, tol.geom_tol)) return finish(FlowStatus::Converged, "input is convex");

  Polygon p = input;
  std::vector<double> running_max = distance_matrix(p);
  std::vector<bool> locked(n, false);
  {
    const auto s = turning_sines(p);
    for (std::size_t i = 0; i < n; ++i) locked[i] = std::abs(s[i]) <= tol.geom_tol;
  }
  double h = cfg.h0;
  double time = 0.0;

  for (std::size_t k = 1; k <= cfg.max_steps; ++k) {
    Chains chains;
    Polygon r = p;
    ExpansionResult result;
    try {
      chains = build_chains(p, locked, lengths);
      r = reduced_polygon(p, chains);
      auto struts = default_struts(r, cfg.strut_rule);
      if (struts.empty()) {
        return is_convex(p, tol.geom_tol)
                   ? finish(FlowStatus::Converged, "no struts remain; polygon is convex")
                   : finish(FlowStatus::Blocked, "no struts remain on a nonconvex polygon");
      }
      auto weights = strut_weights(r, struts);
      // Velocities for the unit-extent copy are valid for r as well: every
      // row value just scales by the extent.
      const double scale = 1.0 / r.extent();
      std::vector<Point2> unit(r.vertices().begin(), r.vertices().end());
      for (auto& q : unit) q *= scale;
      result = solve_infinitesimal_expansion(
          {Framework(Polygon(std::move(unit)), std::move(struts)), PinSpec{}, 1.0, std::move(weights),
           cfg.lp_blocked_tol},
          tol);
    } catch (const NumericalError& e) {
      return finish(FlowStatus::NumericalFailure, e.what());
    }
    if (const auto* b = std::get_if<Blocked>(&result)) {
      if (is_convex(p, tol.geom_tol)) return finish(FlowStatus::Converged, "blocked at a convex polygon");
      std::ostringstream os;
      os << "blocked while nonconvex at step " << k << " (eps* = " << b->eps_star << ")";
      return finish(FlowStatus::Blocked, os.str());
    }
    const auto& ex = std::get<Expansion>(result);
    if (ex.eps < 10.0 * cfg.lp_blocked_tol && is_convex(p, tol.geom_tol)) {
      return finish(FlowStatus::Converged, "expansion margin vanished at a convex polygon");
    }

    const double energy = interdistance_functional(p);
    const auto old_sines = turning_sines(p);
    const auto old_dist = distance_matrix(p);
    std::size_t retries = 0;
    Polygon next = p;
    std::vector<double> dist;
    const char* failed = "";
    for (;;) {
      bool ok = true;
      failed = "projection";
      try {
        const Polygon moved = step(r, ex.v, h, chains.targets, cfg.projection_tol, cfg.projection_sweeps);
        next = place(repin(moved, r), chains, n);
      } catch (const NumericalError&) {
        ok = false;
      } catch (const InputError&) {
        ok = false;
      }
      if (ok && !(ok = interdistance_functional(next) > energy)) failed = "energy";
      if (ok) {
        failed = "dominance";
        dist = distance_matrix(next);
        for (std::size_t q = 0; ok && q < dist.size(); ++q) {
          ok = dist[q] >= running_max[q] - 0.5 * tol.strut_tol;
        }
      }
      if (ok) {
        failed = "turning sign";
        const auto s = turning_sines(next);
        for (std::size_t i = 0; ok && i < n; ++i) {
          if (locked[i] || std::abs(s[i]) <= tol.geom_tol) continue;
          ok = (s[i] > 0.0) == (old_sines[i] > 0.0);
        }
      }
      if (ok && !(ok = is_simple(next, tol.geom_tol))) failed = "simplicity";
      if (ok) break;
      h *= 0.5;
      ++retries;
      if (h < cfg.min_step) {
        std::ostringstream os;
        os << "step size fell below " << cfg.min_step << " at step " << k << " (" << failed
           << " guard)";
        return finish(FlowStatus::StepUnderflow, os.str());
      }
    }

    time += h;
    StepDiagnostics d = describe(k, time, next, lengths);
    d.h = h;
    d.eps = ex.eps;
    d.retries = retries;
    d.min_strut_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (j == i + 1 || (i == 0 && j == n - 1)) continue;
        d.min_strut_slack = std::min(d.min_strut_slack, dist[i * n + j] - old_dist[i * n + j]);
      }
    }
    if (!std::isfinite(d.min_strut_slack)) d.min_strut_slack = 0.0;
    for (std::size_t q = 0; q < dist.size(); ++q) running_max[q] = std::max(running_max[q], dist[q]);
    p = std::move(next);
    {
      const auto s = turning_sines(p);
      for (std::size_t i = 0; i < n; ++i) locked[i] = locked[i] || std::abs(s[i]) <= tol.geom_tol;
    }
    d.locked = static_cast<std::size_t>(std::count(locked.begin(), locked.end(), true));
    traj.snapshots.push_back({time, p});
    traj.diagnostics.push_back(d);
    if (cfg.on_step) cfg.on_step(d);
    if (retries == 0) h = std::min(1.5 * h, cfg.max_step);
    if (cfg.stop_mode == StopMode::Convex && is_convex(p, tol.geom_tol)) {
      return finish(FlowStatus::Converged, "reached a convex polygon");
    }
  }
  if (is_convex(p, tol.geom_tol)) return finish(FlowStatus::Converged, "reached a convex polygon");
  return finish(FlowStatus::MaxSteps, "step budget exhausted before convexity");
}

TrajectoryReport verify_trajectory(const Trajectory& traj, const ToleranceProfile& tol) {
  if (traj.snapshots.empty()) throw InputError("cannot verify an empty trajectory");
  TrajectoryReport rep;
  const Polygon& first = traj.snapshots.front().polygon;
  const std::size_t n = first.size();
  for (const auto& s : traj.snapshots) {
    if (s.polygon.size() != n) throw InputError("trajectory vertex counts differ");
  }
  const auto lengths0 = edge_lengths(first);
  std::vector<double> running_max = distance_matrix(first);
  rep.simple_ok = true;
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const Polygon& p = traj.snapshots[k].polygon;
    const double drift = max_length_residual(p, lengths0);
    rep.max_length_drift = std::max(rep.max_length_drift, drift);
    if (drift > tol.length_tol) {
      std::ostringstream os;
      os << "snapshot " << k << ": edge length drift " << drift;
      rep.violations.push_back(os.str());
    }
    const auto dist = distance_matrix(p);
    double worst = 0.0;
    for (std::size_t q = 0; q < dist.size(); ++q) {
      worst = std::max(worst, running_max[q] - dist[q]);
      running_max[q] = std::max(running_max[q], dist[q]);
    }
    rep.worst_dominance = std::max(rep.worst_dominance, worst);
    if (worst > tol.strut_tol) {
      std::ostringstream os;
      os << "snapshot " << k << ": a vertex distance shrank by " << worst
         << " relative to an earlier snapshot";
      rep.violations.push_back(os.str());
    }
    if (rep.simple_ok && !is_simple(p, tol.geom_tol)) {
      rep.simple_ok = false;
      rep.first_nonsimple = k;
      rep.violations.push_back("snapshot " + std::to_string(k) + " is not simple");
    }
  }
  rep.lengths_ok = rep.max_length_drift <= tol.length_tol;
  rep.dominance_ok = rep.worst_dominance <= tol.strut_tol;
  rep.convex_ok = !traj.success() || is_convex(traj.final_polygon(), tol.geom_tol);
  if (!rep.convex_ok) rep.violations.push_back("success claimed but the final snapshot is not convex");
  rep.pass = rep.lengths_ok && rep.dominance_ok && rep.simple_ok && rep.convex_ok;
  return rep;
}

namespace {

Polygon lerp(const Polygon& a, const Polygon& b, double s) {
  std::vector<Point2> q(a.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = a[i] + s * (b[i] - a[i]);
  return Polygon(std::move(q));
}

}  // namespace

Trajectory reparameterize_by_E(const Trajectory& traj, std::size_t frame_count) {
  traj.validate();
  const std::size_t count = traj.snapshots.size();
  if (count < 2) throw InputError("E is not strictly increasing: trajectory has a single snapshot");
  std::vector<double> energy(count);
  for (std::size_t k = 0; k < count; ++k) energy[k] = interdistance_functional(traj.snapshots[k].polygon);
  for (std::size_t k = 1; k < count; ++k) {
    if (!(energy[k] > energy[k - 1])) {
      throw InputError("E is not strictly increasing at snapshot " + std::to_string(k));
    }
  }
  const std::size_t frames = frame_count == 0 ? count : frame_count;
  if (frames < 2) throw InputError("reparameterization needs at least two frames");
  const std::vector<double> lengths = edge_lengths(traj.snapshots.front().polygon);

  Trajectory out;
  out.status = traj.status;
  out.message = traj.message;
  for (std::size_t f = 0; f < frames; ++f) {
    const double tau = static_cast<double>(f) / static_cast<double>(frames - 1);
    Polygon frame = traj.snapshots.front().polygon;
    if (f == frames - 1) {
      frame = traj.snapshots.back().polygon;
    } else if (f > 0) {
      const double target = energy.front() + tau * (energy.back() - energy.front());
      const auto it = std::upper_bound(energy.begin(), energy.end(), target);
      const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - energy.begin()), count - 1);
      const std::size_t lo = hi - 1;
      const Polygon& a = traj.snapshots[lo].polygon;
      const Polygon& b = traj.snapshots[hi].polygon;
      double s0 = 0.0, s1 = 1.0;
      for (int it2 = 0; it2 < 200 && s1 - s0 > 1e-16; ++it2) {
        const double mid = 0.5 * (s0 + s1);
        (interdistance_functional(lerp(a, b, mid)) < target ? s0 : s1) = mid;
      }
      frame = lerp(a, b, 0.5 * (s0 + s1));
    }
    StepDiagnostics d = describe(f, tau, frame, lengths);
    d.simple = is_simple(frame);
    out.diagnostics.push_back(d);
    out.snapshots.push_back({tau, std::move(frame)});
  }
  return out;
}

}  // namespace convexify
