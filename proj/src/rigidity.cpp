// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/rigidity.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "convexify/error.hpp"

namespace convexify {

Framework::Framework(Polygon polygon, std::vector<IndexPair> struts)
    : polygon_(std::move(polygon)) {
  const std::size_t n = polygon_.size();
  for (auto& [i, j] : struts) {
    if (i >= n || j >= n) {
      throw InputError("strut (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") is out of range");
    }
    if (i == j) throw InputError("strut joins vertex " + std::to_string(i) + " to itself");
    if (i > j) std::swap(i, j);
    if (j == i + 1 || (i == 0 && j == n - 1)) {
      throw InputError("strut (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") duplicates a bar");
    }
  }
  std::sort(struts.begin(), struts.end());
  struts.erase(std::unique(struts.begin(), struts.end()), struts.end());
  struts_ = std::move(struts);
}

RigidityMatrix build_rigidity_matrix(const Framework& f) {
  RigidityMatrix r;
  const std::size_t n = f.vertex_count();
  r.bar_rows = f.bar_count();
  r.pairs.reserve(f.bar_count() + f.strut_count());
  for (std::size_t k = 0; k < f.bar_count(); ++k) r.pairs.push_back(f.bar(k));
  r.pairs.insert(r.pairs.end(), f.struts().begin(), f.struts().end());
  r.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r.pairs.size()),
                                   static_cast<Eigen::Index>(2 * n));
  const Polygon& p = f.polygon();
  for (std::size_t row = 0; row < r.pairs.size(); ++row) {
    const auto [i, j] = r.pairs[row];
    const Point2 d = p[i] - p[j];
    const auto rr = static_cast<Eigen::Index>(row);
    r.matrix(rr, static_cast<Eigen::Index>(2 * i)) = d.x;
    r.matrix(rr, static_cast<Eigen::Index>(2 * i + 1)) = d.y;
    r.matrix(rr, static_cast<Eigen::Index>(2 * j)) = -d.x;
    r.matrix(rr, static_cast<Eigen::Index>(2 * j + 1)) = -d.y;
  }
  return r;
}

Eigen::VectorXd flatten(const std::vector<Point2>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(2 * v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(2 * i)) = v[i].x;
    out(static_cast<Eigen::Index>(2 * i + 1)) = v[i].y;
  }
  return out;
}

std::vector<Point2> unflatten(const Eigen::VectorXd& v) {
  std::vector<Point2> out(static_cast<std::size_t>(v.size() / 2));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {v(static_cast<Eigen::Index>(2 * i)), v(static_cast<Eigen::Index>(2 * i + 1))};
  }
  return out;
}

Eigen::VectorXd StressCertificate::stacked() const {
  Eigen::VectorXd s(omega.size() + t.size());
  s << omega, t;
  return s;
}

std::vector<Point2> apply_stress_load(const Framework& f, const StressCertificate& s) {
  if (static_cast<std::size_t>(s.omega.size()) != f.bar_count() ||
      static_cast<std::size_t>(s.t.size()) != f.strut_count()) {
    throw InputError("stress has " + std::to_string(s.omega.size()) + " bar and " +
                     std::to_string(s.t.size()) + " strut entries; framework has " +
                     std::to_string(f.bar_count()) + " and " + std::to_string(f.strut_count()));
  }
  const Polygon& p = f.polygon();
  std::vector<Point2> load(f.vertex_count());
  auto add = [&](std::size_t i, std::size_t j, double sigma) {
    const Point2 d = sigma * (p[i] - p[j]);
    load[i] += d;
    load[j] -= d;
  };
  for (std::size_t k = 0; k < f.bar_count(); ++k) {
    add(f.bar(k).first, f.bar(k).second, s.omega(static_cast<Eigen::Index>(k)));
  }
  for (std::size_t k = 0; k < f.strut_count(); ++k) {
    add(f.struts()[k].first, f.struts()[k].second, s.t(static_cast<Eigen::Index>(k)));
  }
  return load;
}

EquilibriumReport is_equilibrium_stress(const Framework& f, const StressCertificate& s,
                                        double tol) {
  EquilibriumReport rep;
  for (const auto& l : apply_stress_load(f, s)) rep.max_load = std::max(rep.max_load, norm(l));
  rep.equilibrium = rep.max_load <= tol;
  rep.trivially_zero = s.omega.isZero(0.0) && s.t.isZero(0.0);
  return rep;
}

const char* to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::Convex: return "Convex";
    case Dichotomy::OnBoundary: return "OnBoundary";
    case Dichotomy::Violation: return "Violation";
  }
  return "?";
}

namespace {

double boundary_distance(const Polygon& p, const Point2& q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.size(); ++k) {
    best = std::min(best, point_segment_distance(q, p[k], p[p.next(k)]));
  }
  return best;
}

}  // namespace

Dichotomy blocked_stress_dichotomy_check(const Framework& f, const StressCertificate& s,
                                         const ToleranceProfile& tol) {
  if ((s.t.array() < -tol.eq_tol).any()) {
    throw InputError("dichotomy check needs nonnegative strut stresses");
  }
  if (!(s.norm() > tol.eq_tol)) throw InputError("dichotomy check needs a nonzero certificate");
  const auto eq = is_equilibrium_stress(f, s, tol.eq_tol);
  if (!eq.equilibrium) {
    throw InputError("dichotomy check needs an equilibrium stress (max load " +
                     std::to_string(eq.max_load) + ")");
  }
  const Polygon& p = f.polygon();
  if (is_convex(p, tol.geom_tol)) return Dichotomy::Convex;

  constexpr int kSamples = 64;
  const double reach = tol.geom_tol * p.extent();
  for (std::size_t k = 0; k < f.strut_count(); ++k) {
    if (s.t(static_cast<Eigen::Index>(k)) <= tol.eq_tol) continue;
    const Point2& a = p[f.struts()[k].first];
    const Point2& b = p[f.struts()[k].second];
    for (int m = 0; m < kSamples; ++m) {
      const double u = static_cast<double>(m) / (kSamples - 1);
      if (boundary_distance(p, a + u * (b - a)) > reach) return Dichotomy::Violation;
    }
  }
  return Dichotomy::OnBoundary;
}

}  // namespace convexify
