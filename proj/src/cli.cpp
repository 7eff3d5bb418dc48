// Copyright 2026 The convexify Authors
// SPDX-License-Identifier: Apache-2.0

#include "convexify/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "convexify/arrangement.hpp"
#include "convexify/curves.hpp"
#include "convexify/io.hpp"

namespace convexify::cli {

int exit_code(const ExpansionResult& r, const Polygon& p, const ToleranceProfile& tol) {
  if (is_expansion(r) || is_convex(p, tol.geom_tol)) return kSuccess;
  return kFailure;
}

int exit_code(const Trajectory& traj, StopMode mode) {
  switch (traj.status) {
    case FlowStatus::Converged: return kSuccess;
    case FlowStatus::Blocked: return kFailure;
    case FlowStatus::MaxSteps: return mode == StopMode::MaxSteps ? kSuccess : kNumerical;
    case FlowStatus::StepUnderflow:
    case FlowStatus::NumericalFailure: return kNumerical;
  }
  return kNumerical;
}

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* v = std::getenv("CONVEXIFY_LOG");
  if (v == nullptr) return LogLevel::Quiet;
  const std::string s(v);
  if (s == "debug") return LogLevel::Debug;
  if (s == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

void apply_tolerances(const std::vector<std::string>& items, ToleranceProfile& tol) {
  const std::map<std::string, double ToleranceProfile::*> fields{
      {"eq_tol", &ToleranceProfile::eq_tol},
      {"strut_tol", &ToleranceProfile::strut_tol},
      {"length_tol", &ToleranceProfile::length_tol},
      {"geom_tol", &ToleranceProfile::geom_tol}};
  for (const auto& item : items) {
    const auto eq = item.find('=');
    const auto it = fields.find(item.substr(0, eq));
    if (eq == std::string::npos || it == fields.end()) {
      throw CLI::ValidationError("--tol", "expected eq_tol|strut_tol|length_tol|geom_tol=VALUE, got '" +
                                              item + "'");
    }
    try {
      std::size_t used = 0;
      tol.*(it->second) = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--tol", "bad number in '" + item + "'");
    }
  }
  tol.validate();
}

void emit(const std::string& path, const std::string& doc, std::ostream& out) {
  if (path.empty()) {
    out << doc;
  } else {
    io::write_text(path, doc);
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Options {
  std::string output;
  std::vector<std::string> tol_items;

  // catalog / inscribe
  std::string curve;
  std::string polygon_input;
  std::size_t samples = 0;
  std::size_t n = 64;
  bool repair = false;
  std::size_t resample = 0;

  // expand / unfold / lift / verify
  std::string input;
  std::string struts = "nonadjacent";
  std::size_t pin_vertex = 0;
  std::size_t pin_edge = 0;
  double bound = 1.0;
  FlowConfig flow;
  std::string stop = "convex";
  std::size_t svg_frames = 0;
  std::string svg_dir;
  std::string final_polygon;
  std::string order = "bfs";
  double lift_tol = 1e-9;
};

int cmd_catalog(const Options& o, std::ostream& out) {
  if (o.curve.empty()) {
    for (const auto& e : curve_catalog()) {
      out << std::left << std::setw(10) << e.name << std::setw(28) << e.default_spec
          << e.description << "\n";
    }
    return kSuccess;
  }
  const auto curve = ParametricCurve::from_spec(o.curve);
  const std::size_t count = o.samples == 0 ? 16 : o.samples;
  std::ostringstream csv;
  csv << std::setprecision(17) << "s,x,y\n";
  constexpr double kTwoPi = 6.283185307179586;
  for (std::size_t k = 0; k < count; ++k) {
    const double s = kTwoPi * static_cast<double>(k) / static_cast<double>(count);
    const Point2 q = curve.evaluate(s);
    csv << s << ',' << q.x << ',' << q.y << "\n";
  }
  emit(o.output, csv.str(), out);
  if (!o.output.empty()) out << "sampled " << count << " points of " << curve.spec() << "\n";
  return kSuccess;
}

int cmd_inscribe(const Options& o, std::ostream& out) {
  if (o.curve.empty() == o.polygon_input.empty()) {
    throw CLI::ValidationError("inscribe", "give exactly one of --curve or --polygon");
  }
  std::optional<ParametricCurve> curve;
  if (!o.curve.empty()) {
    curve.emplace(ParametricCurve::from_spec(o.curve));
  } else {
    curve.emplace(PolylineCurve{io::read_polygon(o.polygon_input).polygon});
  }
  Polygon p = inscribe_polygon(*curve, o.n);
  if (o.resample > 0) p = resample_by_arclength(p, o.resample);
  if (o.repair) p = repair_to_simple(p);
  io::PolygonMetadata meta{curve->kind(), o.curve.empty() ? o.polygon_input : curve->spec(),
                           p.size()};
  emit(o.output, io::polygon_to_json(p, meta), out);
  if (!o.output.empty()) {
    out << "inscribed " << p.size() << " vertices from " << meta.source
        << " (simple: " << yes_no(is_simple(p)) << ", convex: " << yes_no(is_convex(p)) << ")\n";
  }
  return kSuccess;
}

int cmd_expand(const Options& o, std::ostream& out) {
  ToleranceProfile tol;
  apply_tolerances(o.tol_items, tol);
  const Polygon p = io::read_polygon(o.input).polygon;
  const StrutRule rule = parse_strut_rule(o.struts);
  ExpansionProblem prob{Framework(p, default_struts(p, rule)), {o.pin_vertex, o.pin_edge}, o.bound};
  const auto result = solve_infinitesimal_expansion(prob, tol);
  emit(o.output, io::expansion_result_to_json(prob, result, tol), out);
  if (!o.output.empty()) {
    if (const auto* ex = std::get_if<Expansion>(&result)) {
      out << "Expansion with eps " << ex->eps << " over " << prob.framework.strut_count()
          << " struts\n";
    } else {
      const auto& bl = std::get<Blocked>(result);
      out << "Blocked with eps* " << bl.eps_star << " ("
          << (is_convex(p, tol.geom_tol) ? "convex" : "nonconvex") << ")\n";
    }
  }
  return exit_code(result, p, tol);
}

int cmd_unfold(Options o, std::ostream& out, std::ostream& err) {
  apply_tolerances(o.tol_items, o.flow.tol);
  o.flow.strut_rule = parse_strut_rule(o.struts);
  o.flow.stop_mode = parse_stop_mode(o.stop);
  const LogLevel level = log_level();
  if (level != LogLevel::Quiet) {
    o.flow.on_step = [&err, level](const StepDiagnostics& d) {
      if (level == LogLevel::Debug || d.step % 100 == 0) {
        err << "step " << d.step << " t " << d.time << " h " << d.h << " eps " << d.eps << " E "
            << d.energy << " locked " << d.locked << " retries " << d.retries << "\n";
      }
    };
  }
  const Polygon p = io::read_polygon(o.input).polygon;
  const Trajectory traj = unfold(p, o.flow);
  io::emit_trajectory_csv(traj, o.flow, o.output);
  if (!o.final_polygon.empty()) {
    io::write_polygon(traj.final_polygon(), o.final_polygon, {"final", o.input, p.size()});
  }
  std::size_t frames = 0;
  if (o.svg_frames > 0) {
    const std::string dir = o.svg_dir.empty() ? o.output + ".frames" : o.svg_dir;
    frames = io::emit_svg_frames(traj, dir, o.svg_frames).size();
  }
  out << to_string(traj.status) << " after " << traj.snapshots.size() - 1 << " steps: "
      << traj.message << "\n";
  if (frames > 0) out << "wrote " << frames << " SVG frames\n";
  return exit_code(traj, o.flow.stop_mode);
}

int cmd_lift(const Options& o, std::ostream& out) {
  const auto doc = io::read_framework(o.input);
  if (!doc.stress) throw InputError(o.input + " carries no stress");
  DualTraversal order = DualTraversal::BreadthFirst;
  if (o.order == "dfs") {
    order = DualTraversal::DepthFirst;
  } else if (o.order == "reverse-bfs") {
    order = DualTraversal::ReverseBreadthFirst;
  } else if (o.order != "bfs") {
    throw CLI::ValidationError("--order", "expected bfs, dfs or reverse-bfs");
  }
  const PlanarEmbedding e = embed_framework(doc.framework, *doc.stress);
  const Lift lift = maxwell_lift(e, o.lift_tol, order);
  const LiftReport rep = verify_lift(e, lift, o.lift_tol);
  emit(o.output, io::lift_to_json(e, lift, rep), out);
  if (!o.output.empty()) {
    out << "lift over " << e.faces.size() << " faces: " << (rep.pass ? "verified" : "FAILED")
        << " (continuity " << rep.max_continuity << ", jump " << rep.max_jump << ")\n";
  }
  return rep.pass ? kSuccess : kFailure;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto doc = io::read_trajectory_csv(o.input);
  ToleranceProfile tol = doc.tol;
  apply_tolerances(o.tol_items, tol);
  const auto rep = verify_trajectory(doc.trajectory, tol);
  emit(o.output, io::trajectory_report_to_json(rep), out);
  if (!o.output.empty()) {
    out << (rep.pass ? "pass" : "FAIL") << ": drift " << rep.max_length_drift << ", dominance "
        << rep.worst_dominance << ", " << rep.violations.size() << " violations\n";
  }
  return rep.pass ? kSuccess : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convexify simple polygons by expansive motions", "convexify"};
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sub, const char* what) { sub->add_option("-o,--output", o.output, what); };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol_items, "Tolerance override KEY=VALUE (repeatable)");
  };

  auto* catalog = app.add_subcommand("catalog", "List catalog curves or sample one");
  catalog->add_option("--curve", o.curve, "Curve spec to sample, e.g. kind=teeth,teeth_count=2");
  catalog->add_option("--samples", o.samples, "Number of parameter samples")->check(CLI::PositiveNumber);
  add_output(catalog, "CSV output path");

  auto* inscribe = app.add_subcommand("inscribe", "Inscribe a polygon in a curve");
  inscribe->add_option("--curve", o.curve, "Curve spec");
  inscribe->add_option("--polygon", o.polygon_input, "Polygon document to wrap as a curve");
  inscribe->add_option("--n", o.n, "Vertex count")->check(CLI::Range(3, 1 << 20));
  inscribe->add_option("--resample", o.resample, "Resample to this many vertices by arc length");
  inscribe->add_flag("--repair", o.repair, "Keep the largest simple face when self-intersecting");
  add_output(inscribe, "Polygon document path");

  auto* expand = app.add_subcommand("expand", "One-shot infinitesimal expansion or certificate");
  expand->add_option("input", o.input, "Polygon document")->required();
  expand->add_option("--struts", o.struts, "nonadjacent | two_edges_apart");
  expand->add_option("--pin-vertex", o.pin_vertex, "Anchored vertex");
  expand->add_option("--pin-edge", o.pin_edge, "Edge whose direction is fixed");
  expand->add_option("--bound", o.bound, "Velocity box bound")->check(CLI::PositiveNumber);
  add_tol(expand);
  add_output(expand, "Result document path");

  auto* unf = app.add_subcommand("unfold", "Run the expansive flow to a convex polygon");
  unf->add_option("input", o.input, "Polygon document")->required();
  unf->add_option("-o,--output", o.output, "Trajectory CSV path")->required();
  unf->add_option("--h0", o.flow.h0, "Initial step");
  unf->add_option("--min-step", o.flow.min_step, "Smallest step before giving up");
  unf->add_option("--max-step", o.flow.max_step, "Largest step");
  unf->add_option("--max-steps", o.flow.max_steps, "Step budget");
  unf->add_option("--struts", o.struts, "nonadjacent | two_edges_apart");
  unf->add_option("--stop", o.stop, "convex | max_steps");
  unf->add_option("--svg-frames", o.svg_frames, "Number of SVG frames to write");
  unf->add_option("--svg-dir", o.svg_dir, "Frame directory (default OUTPUT.frames)");
  unf->add_option("--final", o.final_polygon, "Write the final polygon document here");
  add_tol(unf);

  auto* lift = app.add_subcommand("lift", "Maxwell-Cremona lift of a stressed framework");
  lift->add_option("input", o.input, "Framework document with stress, or a Blocked expand result")
      ->required();
  lift->add_option("--order", o.order, "Dual traversal: bfs | dfs | reverse-bfs");
  lift->add_option("--lift-tol", o.lift_tol, "Equilibrium and verification tolerance")
      ->check(CLI::PositiveNumber);
  add_output(lift, "Lift document path");

  auto* verify = app.add_subcommand("verify", "Recheck a trajectory CSV");
  verify->add_option("input", o.input, "Trajectory CSV")->required();
  add_tol(verify);
  add_output(verify, "Report document path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (catalog->parsed()) return cmd_catalog(o, out);
    if (inscribe->parsed()) return cmd_inscribe(o, out);
    if (expand->parsed()) return cmd_expand(o, out);
    if (unf->parsed()) return cmd_unfold(o, out, err);
    if (lift->parsed()) return cmd_lift(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace convexify::cli
