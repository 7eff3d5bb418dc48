// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <optional>
#include <vector>

#include "convexify/rigidity.hpp"

namespace convexify {

enum class StrutRule { Nonadjacent, TwoEdgesApart };

const char* to_string(StrutRule r);
StrutRule parse_strut_rule(const std::string& name);

/// Nonadjacent: cyclic index distance >= 2. TwoEdgesApart: at least two full
/// edges between the pair in both directions. (On vertex pairs the two rules
/// select the same set; they differ only for points interior to edges.)
std::vector<IndexPair> default_struts(const Polygon& p, StrutRule rule);

/// Removes the rigid-motion kernel: `vertex` is held fixed and the other
/// endpoint of bar `edge` may only slide along that bar.
struct PinSpec {
  std::size_t vertex = 0;
  std::size_t edge = 0;
};

struct ExpansionProblem {
  Framework framework;
  PinSpec pin{};
  double bound = 1.0;  ///< box bound on every velocity component
  /// Optional per-strut weights w > 0: strut rows must reach eps * w. Empty
  /// means every strut weighs 1.
  std::vector<double> strut_weights{};
  /// Optimal margin at or below which the instance counts as blocked;
  /// unset means tol.strut_tol. Validation always uses the profile.
  std::optional<double> blocked_margin{};
};

struct Expansion {
  Velocities v;
  double eps = 0.0;  ///< smallest (weighted) strut row value attained by v
};

struct Blocked {
  StressCertificate certificate;  ///< normalized to ||t||_1 = 1
  double eps_star = 0.0;          ///< LP optimum, at most the blocked threshold
};

using ExpansionResult = std::variant<Expansion, Blocked>;

inline bool is_expansion(const ExpansionResult& r) { return std::holds_alternative<Expansion>(r); }

/// maximize eps  s.t.  bar rows = 0, strut rows >= eps, pin rows = 0,
/// |v components| <= bound. Returns Expansion when the optimum exceeds
/// tol.strut_tol, otherwise the strut/bar multipliers as a certificate.
/// Both witnesses are revalidated independently; a witness that fails raises
/// NumericalError rather than returning the wrong branch.
ExpansionResult solve_infinitesimal_expansion(const ExpansionProblem& problem,
                                              const ToleranceProfile& tol = {});

struct ExpansionReport {
  double max_bar_residual = 0.0;
  double min_strut_slack = 0.0;  ///< min over struts of (row value - eps * weight)
  double min_strut_value = 0.0;
  double pin_residual = 0.0;
  double max_component = 0.0;
  bool bars_ok = false;
  bool struts_ok = false;
  bool pin_ok = false;
  bool box_ok = false;
  bool pass = false;
};

ExpansionReport validate_expansion(const Framework& f, const Velocities& v, double eps,
                                   const ToleranceProfile& tol, const PinSpec& pin = {},
                                   double bound = 1.0, const std::vector<double>& weights = {});

struct CertificateReport {
  double min_t = 0.0;
  double norm = 0.0;
  double max_load = 0.0;
  bool nonnegative = false;
  bool normalized = false;
  bool equilibrium = false;
  bool dichotomy_checked = false;
  Dichotomy dichotomy = Dichotomy::Violation;
  bool pass = false;
};

CertificateReport validate_certificate(const Framework& f, const StressCertificate& cert,
                                       const ToleranceProfile& tol, bool run_dichotomy = true);

}  // namespace convexify
