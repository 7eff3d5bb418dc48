// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/expansion.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "convexify/error.hpp"
#include "convexify/lp.hpp"

namespace convexify {

const char* to_string(StrutRule r) {
  return r == StrutRule::Nonadjacent ? "nonadjacent" : "two_edges_apart";
}

StrutRule parse_strut_rule(const std::string& name) {
  if (name == "nonadjacent") return StrutRule::Nonadjacent;
  if (name == "two_edges_apart") return StrutRule::TwoEdgesApart;
  throw InputError("unknown strut rule '" + name + "'");
}

std::vector<IndexPair> default_struts(const Polygon& p, StrutRule rule) {
  const std::size_t n = p.size();
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t forward = j - i;   // edges walked i -> j
      const std::size_t backward = n - forward;
      const bool keep = rule == StrutRule::Nonadjacent
                            ? std::min(forward, backward) >= 2
                            : forward >= 2 && backward >= 2;
      if (keep) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

std::size_t pinned_partner(const Framework& f, const PinSpec& pin) {
  const std::size_t n = f.vertex_count();
  if (pin.vertex >= n || pin.edge >= n) throw InputError("pin indices out of range");
  const auto [a, b] = f.bar(pin.edge);
  if (pin.vertex == a) return b;
  if (pin.vertex == b) return a;
  throw InputError("pinned vertex must be an endpoint of the pinned edge");
}

}  // namespace

// The LP is solved in its Farkas-dual form, which has 2(n - 2) + 1 rows
// instead of one row per strut:
//
//   minimize   bound * sum(lambda+ + lambda-)
//   subject to S' t - B' w - lambda+ + lambda- = 0   (per free velocity component)
//              sum(weight * t) = 1
//              t, lambda >= 0, w free
//
// S and B are the strut and bar rows restricted to the unpinned vertices; the
// pin plus the pinned bar fix both pinned vertices, so that bar drops out.
// Its row multipliers y give the velocities v = -y_v and the margin eps = y_eps.
ExpansionResult solve_infinitesimal_expansion(const ExpansionProblem& problem,
                                              const ToleranceProfile& tol) {
  tol.validate();
  const Framework& f = problem.framework;
  const Polygon& p = f.polygon();
  if (f.strut_count() == 0) throw InputError("expansion problem needs at least one strut");
  if (!(problem.bound > 0.0)) throw InputError("velocity bound must be positive");
  if (problem.blocked_margin && !(*problem.blocked_margin > 0.0)) {
    throw InputError("blocked margin must be positive");
  }
  const std::size_t ns = f.strut_count();
  const auto& w = problem.strut_weights;
  if (!w.empty()) {
    if (w.size() != ns) throw InputError("strut weight count differs from strut count");
    for (double x : w) {
      if (!(x > 0.0) || !std::isfinite(x)) throw InputError("strut weights must be positive");
    }
  }
  auto weight = [&](std::size_t s) { return w.empty() ? 1.0 : w[s]; };
  const std::size_t n = f.vertex_count();
  const std::size_t anchor = problem.pin.vertex;
  const std::size_t partner = pinned_partner(f, problem.pin);

  std::vector<long> column(n, -1);  // vertex -> first velocity column
  std::size_t free_vertices = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != anchor && i != partner) column[i] = static_cast<long>(2 * free_vertices++);
  }
  const std::size_t vel_rows = 2 * free_vertices;
  std::vector<std::size_t> bars;
  for (std::size_t k = 0; k < f.bar_count(); ++k) {
    if (k != problem.pin.edge) bars.push_back(k);
  }
  const std::size_t nb = bars.size();
  const std::size_t n_cols = ns + nb + 2 * vel_rows;

  lp::LinearProgram prog;
  prog.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vel_rows + 1),
                                 static_cast<Eigen::Index>(n_cols));
  prog.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vel_rows + 1));
  prog.b(static_cast<Eigen::Index>(vel_rows)) = 1.0;
  prog.sense.assign(vel_rows + 1, lp::RowSense::Equal);
  prog.c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_cols));
  prog.free.assign(n_cols, false);

  auto put_pair = [&](std::size_t col, std::size_t i, std::size_t j, double sign) {
    const Point2 d = p[i] - p[j];
    const auto c = static_cast<Eigen::Index>(col);
    if (column[i] >= 0) {
      prog.A(column[i], c) += sign * d.x;
      prog.A(column[i] + 1, c) += sign * d.y;
    }
    if (column[j] >= 0) {
      prog.A(column[j], c) -= sign * d.x;
      prog.A(column[j] + 1, c) -= sign * d.y;
    }
  };
  for (std::size_t s = 0; s < ns; ++s) {
    put_pair(s, f.struts()[s].first, f.struts()[s].second, 1.0);
    prog.A(static_cast<Eigen::Index>(vel_rows), static_cast<Eigen::Index>(s)) = weight(s);
  }
  for (std::size_t k = 0; k < nb; ++k) {
    const auto [i, j] = f.bar(bars[k]);
    put_pair(ns + k, i, j, -1.0);
    prog.free[ns + k] = true;
  }
  for (std::size_t r = 0; r < vel_rows; ++r) {
    const auto plus = static_cast<Eigen::Index>(ns + nb + r);
    const auto minus = static_cast<Eigen::Index>(ns + nb + vel_rows + r);
    prog.A(static_cast<Eigen::Index>(r), plus) = -1.0;
    prog.A(static_cast<Eigen::Index>(r), minus) = 1.0;
    prog.c(plus) = problem.bound;
    prog.c(minus) = problem.bound;
  }

  const lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal) {
    throw NumericalError("expansion LP did not reach an optimal basis (status " + std::to_string(static_cast<int>(sol.status)) + ")");
  }
  const double eps_star = sol.objective;

  const double blocked_margin = problem.blocked_margin.value_or(tol.strut_tol);
  if (eps_star > blocked_margin) {
    Velocities v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (column[i] < 0) continue;
      v[i] = {-sol.duals(column[i]), -sol.duals(column[i] + 1)};
    }
    const RigidityMatrix R = build_rigidity_matrix(f);
    const Eigen::VectorXd rows = R.matrix * flatten(v);
    // Largest margin up to the optimum that every strut meets within
    // strut_tol; a plain min of row / weight amplifies noise on tiny weights.
    double eps = eps_star;
    for (std::size_t s = 0; s < ns; ++s) {
      const double row = rows(static_cast<Eigen::Index>(f.bar_count() + s));
      eps = std::min(eps, (row + 0.5 * tol.strut_tol) / weight(s));
    }
    const auto rep = validate_expansion(f, v, eps, tol, problem.pin, problem.bound, w);
    if (!rep.pass || !(eps > blocked_margin)) {
      std::ostringstream os;
      os << "expansion LP optimum " << eps_star << " but recovered velocities fail validation"
         << " (eps " << eps << ", bar residual " << rep.max_bar_residual << ", strut slack "
         << rep.min_strut_slack << ", pin residual " << rep.pin_residual << ")";
      throw NumericalError(os.str());
    }
    return Expansion{std::move(v), eps};
  }

  StressCertificate cert;
  cert.t = sol.x.head(static_cast<Eigen::Index>(ns)).cwiseMax(0.0);
  cert.omega = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f.bar_count()));
  for (std::size_t k = 0; k < nb; ++k) {
    cert.omega(static_cast<Eigen::Index>(bars[k])) = -sol.x(static_cast<Eigen::Index>(ns + k));
  }
  // The pinned bar's multiplier balances whatever load remains at the
  // partner vertex; net force and torque vanish, so that load lies along
  // the bar.
  {
    const auto load = apply_stress_load(f, cert);
    const Point2 e = p[partner] - p[anchor];
    cert.omega(static_cast<Eigen::Index>(problem.pin.edge)) = -dot(load[partner], e) / dot(e, e);
  }
  const double scale = cert.norm();
  if (!(scale > 0.0)) throw NumericalError("blocking certificate has zero strut stress");
  cert.t /= scale;
  cert.omega /= scale;
  const auto rep = validate_certificate(f, cert, tol, false);
  if (!rep.pass) {
    throw NumericalError("blocking certificate fails validation (max load " +
                         std::to_string(rep.max_load) + ")");
  }
  return Blocked{std::move(cert), std::max(eps_star, 0.0)};
}

ExpansionReport validate_expansion(const Framework& f, const Velocities& v, double eps,
                                   const ToleranceProfile& tol, const PinSpec& pin,
                                   double bound, const std::vector<double>& weights) {
  if (v.size() != f.vertex_count()) throw InputError("velocity count differs from vertex count");
  if (!weights.empty() && weights.size() != f.strut_count()) {
    throw InputError("strut weight count differs from strut count");
  }
  const Polygon& p = f.polygon();
  ExpansionReport rep;
  auto row = [&](std::size_t i, std::size_t j) { return dot(p[i] - p[j], v[i] - v[j]); };
  for (std::size_t k = 0; k < f.bar_count(); ++k) {
    const auto [i, j] = f.bar(k);
    rep.max_bar_residual = std::max(rep.max_bar_residual, std::abs(row(i, j)));
  }
  rep.min_strut_value = std::numeric_limits<double>::infinity();
  rep.min_strut_slack = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < f.strut_count(); ++s) {
    const auto [i, j] = f.struts()[s];
    const double value = row(i, j);
    rep.min_strut_value = std::min(rep.min_strut_value, value);
    rep.min_strut_slack = std::min(rep.min_strut_slack, value - eps * (weights.empty() ? 1.0 : weights[s]));
  }
  const std::size_t partner = pinned_partner(f, pin);
  const Point2 e = p[partner] - p[pin.vertex];
  rep.pin_residual = std::max(norm(v[pin.vertex]), std::abs(dot(v[partner], rot90(e))));
  for (const auto& w : v) rep.max_component = std::max({rep.max_component, std::abs(w.x), std::abs(w.y)});

  rep.bars_ok = rep.max_bar_residual <= tol.eq_tol;
  rep.struts_ok = f.strut_count() == 0 || rep.min_strut_slack >= -tol.strut_tol;
  rep.pin_ok = rep.pin_residual <= tol.eq_tol;
  rep.box_ok = rep.max_component <= bound + tol.eq_tol;
  rep.pass = rep.bars_ok && rep.struts_ok && rep.pin_ok && rep.box_ok;
  return rep;
}

CertificateReport validate_certificate(const Framework& f, const StressCertificate& cert,
                                       const ToleranceProfile& tol, bool run_dichotomy) {
  CertificateReport rep;
  if (static_cast<std::size_t>(cert.t.size()) != f.strut_count() ||
      static_cast<std::size_t>(cert.omega.size()) != f.bar_count()) {
    throw InputError("certificate is not indexed to this framework");
  }
  const double raw = cert.norm();
  if (!(raw > 0.0)) return rep;
  StressCertificate unit{cert.omega / raw, cert.t / raw};
  rep.min_t = cert.t.size() ? cert.t.minCoeff() : 0.0;
  rep.norm = unit.norm();
  rep.nonnegative = rep.min_t >= -tol.eq_tol;
  rep.normalized = rep.norm >= 1.0 - tol.eq_tol;
  const auto eq = is_equilibrium_stress(f, unit, tol.eq_tol);
  rep.max_load = eq.max_load;
  rep.equilibrium = eq.equilibrium;
  rep.pass = rep.nonnegative && rep.normalized && rep.equilibrium;
  if (run_dichotomy && rep.pass) {
    rep.dichotomy_checked = true;
    rep.dichotomy = blocked_stress_dichotomy_check(f, unit, tol);
    rep.pass = rep.dichotomy != Dichotomy::Violation;
  }
  return rep;
}

}  // namespace convexify
